#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ymt/lattice.hpp"
#include "ymt/lie_core.hpp"

namespace ymt {

/// Execution policy for the data-parallel lattice kernels. Both paths
/// produce bit-identical results.
enum class Exec { serial, parallel };

using Rng = std::mt19937_64;

/// Algebra-valued 0-cochain (a section of the adjoint bundle at vertices).
struct VertexSection {
  LatticePtr lattice;
  AlgebraPtr algebra;
  Mat values;  // l x V

  static VertexSection zero(LatticePtr lat, AlgebraPtr alg);
};

/// Algebra-valued 1-cochain; values on positive edges, reversal negates.
struct AlgebraCochain1 {
  LatticePtr lattice;
  AlgebraPtr algebra;
  Mat values;  // l x E

  static AlgebraCochain1 zero(LatticePtr lat, AlgebraPtr alg);
  Vec value(EdgeRef e) const { return e.sign * values.col(static_cast<Eigen::Index>(e.edge)); }
};

/// Algebra-valued 2-cochain on oriented plaquettes.
struct AlgebraCochain2 {
  LatticePtr lattice;
  AlgebraPtr algebra;
  Mat values;  // l x P

  static AlgebraCochain2 zero(LatticePtr lat, AlgebraPtr alg);
  /// Value on plaquette (x; mu, nu); swapping mu and nu negates.
  Vec value(std::size_t x, int mu, int nu) const;
};

/// Group-valued link variables; the reversed edge carries the inverse.
struct LinkField {
  LatticePtr lattice;
  AlgebraPtr algebra;  // the group is exp of this algebra's representation
  std::vector<CMat> links;

  static LinkField identity(LatticePtr lat, AlgebraPtr alg);
  CMat link(EdgeRef e) const;
  /// Max group-membership residual over all links.
  double group_residual() const;
};

/// Vertexwise gauge transformation.
struct GaugeTransform {
  LatticePtr lattice;
  AlgebraPtr algebra;
  std::vector<CMat> values;

  static GaugeTransform identity(LatticePtr lat, AlgebraPtr alg);
  static GaugeTransform constant(LatticePtr lat, AlgebraPtr alg, const CMat& h);
  GaugeTransform inverse() const;
  double group_residual() const;
};

/// Unitarity, determinant and reality residual of a matrix for the group of `alg`.
double group_residual(const LieAlgebra& alg, const CMat& u);

AlgebraCochain1 coboundary0(const VertexSection& phi);
AlgebraCochain2 coboundary(const AlgebraCochain1& d, Exec exec = Exec::parallel);
AlgebraCochain2 cup_bracket(const AlgebraCochain1& d, Exec exec = Exec::parallel);
AlgebraCochain2 curvature(const AlgebraCochain1& d, Exec exec = Exec::parallel);
/// Coboundary of a 2-cochain on 3-cells (x; mu<nu<rho); l x (V * C(n,3)).
Mat coboundary2(const AlgebraCochain2& w);

/// Principal log of U(e1)U(e2)U(e3)^-1U(e4)^-1 per plaquette, in algebra coordinates.
AlgebraCochain2 plaquette_curvature(const LinkField& u, Exec exec = Exec::parallel);
/// U'(e) = g(src) U(e) g(tgt)^-1.
LinkField gauge_transform_links(const LinkField& u, const GaugeTransform& g, Exec exec = Exec::parallel);
/// Ad_{g(base)} applied plaquettewise / vertexwise.
AlgebraCochain2 adjoint_transform(const AlgebraCochain2& w, const GaugeTransform& g);
VertexSection adjoint_transform(const VertexSection& s, const GaugeTransform& g);

LinkField exp_links(const AlgebraCochain1& d);
AlgebraCochain1 log_links(const LinkField& u);

CMat random_group_element(const LieAlgebra& alg, Rng& rng);
Vec random_algebra_vector(const LieAlgebra& alg, Rng& rng, double amplitude = 1.0);
AlgebraCochain1 random_cochain1(LatticePtr lat, AlgebraPtr alg, Rng& rng, double amplitude = 1.0);
VertexSection random_section(LatticePtr lat, AlgebraPtr alg, Rng& rng, double amplitude = 1.0);
GaugeTransform random_gauge(LatticePtr lat, AlgebraPtr alg, Rng& rng);
/// exp of a random cochain with the given amplitude.
LinkField random_links(LatticePtr lat, AlgebraPtr alg, Rng& rng, double amplitude);

void require_same(const LatticePtr& a, const LatticePtr& b, const char* what);
void require_same(const AlgebraPtr& a, const AlgebraPtr& b, const char* what);

}  // namespace ymt
