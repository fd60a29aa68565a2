#pragma once

#include <vector>

#include "ymt/theory.hpp"

namespace ymt {

/// p(t) = a(t^2 - t) + b(2t^3 - t) + c(t^4 - t), the scalar-invariance polynomial
/// of one connection: S[tD] - t S[D].
struct ScalarPolynomial {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double eval(double t) const;
  /// Coefficients of p in ascending powers, degree 4.
  std::vector<double> coefficients() const;
  bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0; }
};

/// a = <<dD,dD>>, b = symmetrized <<dD, 1/2 D^D>>, c = <<1/2 D^D, 1/2 D^D>>.
ScalarPolynomial scalar_poly(const YMTTheory& t, const AlgebraCochain1& d);
/// The d / bracket split needs algebra-valued fields; always throws InputError.
ScalarPolynomial scalar_poly(const YMTTheory& t, const LinkField& u);

struct RootSet {
  bool all_reals = false;
  std::vector<double> roots;  // ascending
};

/// Real roots of a polynomial (ascending coefficients), isolated between the
/// roots of its derivative and refined by bisection with exact rational signs.
std::vector<double> real_roots(const std::vector<double>& coeffs);
RootSet invariance_roots(const ScalarPolynomial& p);
/// Roots common to every sample (within 1e-10); the sampled estimate of I(S).
RootSet common_roots(const std::vector<ScalarPolynomial>& samples);

}  // namespace ymt
