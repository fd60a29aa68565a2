#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ymt/fields.hpp"
#include "ymt/pairing_space.hpp"

namespace ymt {

struct YMTTheory {
  LatticePtr lattice;
  AlgebraPtr algebra;
  PairingSpec pairing;
  std::string label = "ymt";

  static YMTTheory make(PairingSpec p, std::string label = "ymt");
  void validate() const;
};

/// Per-vertex pairing density (tensorial pairings only), weight not applied.
Vec pairing_density(const YMTTheory& t, const AlgebraCochain2& w1, const AlgebraCochain2& w2,
                    Exec exec = Exec::parallel);
double integrated_pairing(const YMTTheory& t, const AlgebraCochain2& w1, const AlgebraCochain2& w2,
                          Exec exec = Exec::parallel);

double ymt_action(const YMTTheory& t, const AlgebraCochain1& d, Exec exec = Exec::parallel);
double ymt_action(const YMTTheory& t, const LinkField& u, Exec exec = Exec::parallel);

struct GaugeReport {
  double max_deviation = 0.0;
  double reference = 0.0;
  bool invariant = true;
  int trials = 0;
};

/// Deviation of the action under random gauge transforms drawn from `seed`.
GaugeReport gauge_invariance_report(const YMTTheory& t, const LinkField& u, int trials, std::uint64_t seed);
GaugeReport gauge_invariance_report(const YMTTheory& t, const LinkField& u, const std::vector<GaugeTransform>& gauges);
bool within_invariance_tolerance(double deviation, double reference);

double bf_action(const YMTTheory& t, const AlgebraCochain1& d, const AlgebraCochain2& b);
double bf_action(const YMTTheory& t, const LinkField& u, const AlgebraCochain2& b);

/// K_ij = Re tr(T_i T_j) in the matrix representation.
Mat trace_form(const LieAlgebra& alg);
/// Sum over 4-cells of kappa(F cup F) for a given 2-cochain, times volume weight.
double topological_integral(const AlgebraCochain2& f, Exec exec = Exec::parallel);
double topological_term(const YMTTheory& t, const AlgebraCochain1& d, Exec exec = Exec::parallel);

struct FullYM {
  double ymt = 0.0;
  double topological = 0.0;
  double total = 0.0;
};
FullYM full_ym(const YMTTheory& t, const AlgebraCochain1& d);

/// Link form: Ad_{U_e} phi(tgt) - phi(src).
AlgebraCochain1 covariant_derivative(const LinkField& u, const VertexSection& phi);
/// Algebra form: d phi(e) + [D(e), phi(src)].
AlgebraCochain1 covariant_derivative(const AlgebraCochain1& d, const VertexSection& phi);

struct ParameterizedTheory {
  YMTTheory base;
  std::vector<std::string> parameters;
  std::function<double(const std::string&, const LinkField&)> functional_of;
  double condition_number = 1.0;
  double adjoint_residual = 0.0;

  bool has_parameter(const std::string& p) const;
  double operator()(const std::string& p, const LinkField& u) const;
};

/// Gram-matrix machinery behind the parameterized wrapper.
struct CochainGram {
  std::vector<Mat> blocks1;  // per vertex, (n l) x (n l)
  std::vector<Mat> blocks2;  // per vertex, (P l) x (P l)
  double condition_number = 1.0;
};
CochainGram cochain_gram(const YMTTheory& t);
/// d* = G1^-1 d^T G2 applied to a 2-cochain.
AlgebraCochain1 coboundary_adjoint(const CochainGram& g, const AlgebraCochain2& w);
double gram_pairing1(const CochainGram& g, const AlgebraCochain1& a, const AlgebraCochain1& b);
double gram_pairing2(const CochainGram& g, const AlgebraCochain2& a, const AlgebraCochain2& b);

/// Wraps t as a family constant in the parameter. Requires a perfect tensorial
/// pairing; the adjoint identity <<dD, dD>> = <<D, d* d D>> is checked on
/// random samples drawn from `seed`.
ParameterizedTheory wrap_parameterized(const YMTTheory& t, std::vector<std::string> parameters,
                                       std::uint64_t seed = 0);

}  // namespace ymt
