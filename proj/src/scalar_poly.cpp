#include "ymt/scalar_poly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "ymt/error.hpp"

namespace ymt {

double ScalarPolynomial::eval(double t) const {
  return a * (t * t - t) + b * (2 * t * t * t - t) + c * (t * t * t * t - t);
}

std::vector<double> ScalarPolynomial::coefficients() const { return {0.0, -(a + b + c), a, 2 * b, c}; }

ScalarPolynomial scalar_poly(const YMTTheory& t, const AlgebraCochain1& d) {
  const auto dd = coboundary(d);
  const auto k = cup_bracket(d);
  ScalarPolynomial p;
  p.a = integrated_pairing(t, dd, dd);
  p.b = 0.5 * (integrated_pairing(t, dd, k) + integrated_pairing(t, k, dd));
  p.c = integrated_pairing(t, k, k);
  return p;
}

ScalarPolynomial scalar_poly(const YMTTheory&, const LinkField&) {
  throw InputError("scalar_poly: needs an algebra-valued connection, not a link field");
}

namespace {

using Poly = std::vector<double>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0.0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<double>(i) * p[i]);
  trim(d);
  return d;
}

int exact_sign(const Poly& p, double t) {
  // Horner in exact rationals; doubles convert to mpq without rounding.
  mpq_class x(t), acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + mpq_class(*it);
  return sgn(acc);
}

double horner(const Poly& p, double t) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double bisect(const Poly& p, double lo, double hi, int slo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
    const int s = exact_sign(p, mid);
    if (s == 0) return mid;
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> roots_of(const Poly& p) {
  if (p.size() <= 1) return {};
  if (p.size() == 2) return {-p[0] / p[1]};
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, std::abs(p[i] / p.back()));
  bound += 2.0;
  std::vector<double> cuts{-bound};
  for (double c : roots_of(derivative(p)))
    if (c > cuts.back() && c < bound) cuts.push_back(c);
  cuts.push_back(bound);

  double scale = 0.0;
  for (double v : p) scale += std::abs(v);
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const int slo = exact_sign(p, lo), shi = exact_sign(p, hi);
    if (slo == 0) out.push_back(lo);
    if (slo != 0 && shi != 0 && slo != shi) out.push_back(bisect(p, lo, hi, slo));
  }
  // Tangential roots sit at critical points and show no sign change.
  for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
    const double c = cuts[i];
    const double mag = std::pow(std::max(1.0, std::abs(c)), static_cast<double>(p.size() - 1));
    if (exact_sign(p, c) != 0 && std::abs(horner(p, c)) <= 1e-13 * scale * mag) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void dedupe(std::vector<double>& r) {
  std::sort(r.begin(), r.end());
  std::vector<double> out;
  for (double v : r)
    if (out.empty() || v - out.back() > 1e-10) out.push_back(v);
  r = std::move(out);
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  Poly p = coeffs;
  trim(p);
  if (p.empty()) throw InputError("real_roots: zero polynomial");
  auto r = roots_of(p);
  dedupe(r);
  return r;
}

RootSet invariance_roots(const ScalarPolynomial& p) {
  RootSet rs;
  if (p.is_zero()) {
    rs.all_reals = true;
    return rs;
  }
  // p(t) = t * (c t^3 + 2b t^2 + a t - (a+b+c))
  auto r = real_roots({-(p.a + p.b + p.c), p.a, 2 * p.b, p.c});
  r.push_back(0.0);
  dedupe(r);
  rs.roots = std::move(r);
  return rs;
}

RootSet common_roots(const std::vector<ScalarPolynomial>& samples) {
  RootSet acc;
  acc.all_reals = true;
  for (const auto& s : samples) {
    const auto r = invariance_roots(s);
    if (r.all_reals) continue;
    if (acc.all_reals) {
      acc = r;
      continue;
    }
    std::vector<double> keep;
    for (double v : acc.roots)
      if (std::any_of(r.roots.begin(), r.roots.end(), [v](double w) { return std::abs(v - w) <= 1e-10; }))
        keep.push_back(v);
    acc.roots = std::move(keep);
  }
  return acc;
}

}  // namespace ymt
