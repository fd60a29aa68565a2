#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ymt/extension.hpp"

namespace ymt {

using DomainPtr = std::shared_ptr<const SampledDomain>;
using LinkFunctional = std::function<double(const LinkField&)>;

/// Throws PreconditionError when the base theory moves under random local gauge
/// transforms or under the domain generators.
void require_gauge_invariant(const YMTTheory& base, const SampledDomain& dom, std::uint64_t seed);

Extension make_null(const YMTTheory& base, const GroupEmbedding& emb, DomainPtr dom);
Extension make_identity(const YMTTheory& base, DomainPtr dom, std::uint64_t seed = 0);
Extension make_constant(const YMTTheory& base, const GroupEmbedding& emb, DomainPtr dom, const mpq_class& c,
                        const LinkField& d0);
/// r maps every configuration to a connection-tagged one and fixes connections.
Extension make_retract(const YMTTheory& base, DomainPtr dom, const std::vector<std::size_t>& r, std::uint64_t seed = 0);
Extension make_bf(const YMTTheory& base, DomainPtr dom_graph);
Extension make_background(const YMTTheory& base, const VertexSection& s,
                          std::function<double(const LinkField&, const VertexSection&)> coupling, DomainPtr dom,
                          std::uint64_t seed = 0);

// Higgs mechanism for SO(2) in SO(3).

/// Theta_* normal vector of the Euler angles: (sin p sin a, -cos p sin a, cos a).
Vec theta_star(double phi, double alpha);
/// The same vector as a skew-symmetric 3x3 matrix.
Mat theta_star_matrix(double phi, double alpha);
/// Rz(phi) Rx(alpha) Rz(psi).
Mat euler_rotation(double phi, double alpha, double psi);
using ThetaMap = std::function<Vec(double, double)>;
/// Max |theta(phi, alpha) - R(phi, alpha, psi) e_z| over sampled angles.
double coherence_residual(const ThetaMap& theta, int samples, std::uint64_t seed);

struct HiggsPotential {
  double lambda = 0.25;
  double vev = 1.0;
  double operator()(const VertexSection& phi) const;
};
/// <<grad phi, grad phi>> + V(phi) with the Euclidean norm on so(3) coordinates.
double higgs_correction(const LinkField& u, const VertexSection& phi, const HiggsPotential& v);
Extension make_higgs(const YMTTheory& base_hat, DomainPtr dom, const HiggsPotential& v,
                     const ThetaMap& theta = theta_star, std::uint64_t seed = 0);

/// Base theory lifted along the embedding with the pairing k * Killing(target),
/// where k makes the lifted form restrict to the base form.
YMTTheory lift_theory(const YMTTheory& base, const GroupEmbedding& emb);
/// Killing-orthogonal projection of each link log onto d iota(g), exponentiated in G.
LinkField reduce_to_subgroup(const LinkField& u, const GroupEmbedding& emb, const LatticePtr& base_lattice);
double parallel_residual(const LinkField& u, const Vec& phi0);
/// mu * sum_p (d - Re tr hol_p).
LinkFunctional wilson_functional(double mu);
Extension make_higgs_vacuum(const YMTTheory& base, const GroupEmbedding& emb, const Vec& phi0,
                            const LinkFunctional& correction, DomainPtr dom);

/// S_{2,eps}(x) = S_{1,F(eps)}(gmap x) is checked for every parameter of s2.
Extension emergence_to_extension(const ParameterizedTheory& s1, const ParameterizedTheory& s2,
                                 const std::map<std::string, std::string>& fmap,
                                 const std::function<LinkField(const LinkField&)>& gmap, DomainPtr dom,
                                 const std::string& epsilon);

// Demo domains.

/// `count` random link fields with the given amplitude, plus the zero field,
/// closed under the standard generators; all tagged connection.
DomainPtr connection_domain(LatticePtr lat, AlgebraPtr alg, int count, double amplitude, Rng& rng,
                            std::vector<GaugeTransform> gens = {});
/// Pairs (U, plaquette_curvature(U)) over a connection domain, tagged
/// connection and correction; optionally (U, 0) off-graph points.
DomainPtr curvature_graph_domain(const SampledDomain& connections, bool off_graph = false);
/// Connections together with (U, phi) pairs carrying random sections.
DomainPtr product_domain(const SampledDomain& connections, int sections, double amplitude, Rng& rng);
/// r(U, phi) = U on a product domain.
std::vector<std::size_t> projection_retract(const SampledDomain& dom);
/// Pure SO(3) connections and (U, Theta field) pairs from random Euler angles.
DomainPtr higgs_domain(LatticePtr lat, int count, double amplitude, Rng& rng, const ThetaMap& theta = theta_star);
/// SO(3) links: some inside the embedded SO(2) (parallel for phi0 = L_z), some generic.
DomainPtr higgs_vacuum_domain(LatticePtr lat, int parallel, int generic, double amplitude, Rng& rng);

}  // namespace ymt
