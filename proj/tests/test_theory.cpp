#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "ymt/scalar_poly.hpp"
#include "ymt/theory.hpp"

using namespace ymt;
using fixture::lattice;

TEST_SUITE("ymt_theories") {

TEST_CASE("Killing action is gauge invariant, a perturbed form is not") {
  Rng rng(2);
  const auto lat = lattice({3, 3, 3});
  const auto su2 = catalog::su2();
  const auto u = random_links(lat, su2, rng, 0.6);
  CHECK(gauge_invariance_report(fixture::killing_theory(lat, su2), u, 10, 3).invariant);
  Mat f = killing_form(su2).matrix;
  f(0, 1) += 0.4;
  const auto rep = gauge_invariance_report(YMTTheory::make(PairingSpec::tensorial(lat, su2, f)), u, 10, 3);
  CHECK_FALSE(rep.invariant);
  CHECK(rep.max_deviation > 1e-6);
}

TEST_CASE("algebra-form and link-form actions agree at small amplitude") {
  Rng rng(4);
  const auto lat = lattice({3, 3});
  const auto su2 = catalog::su2();
  const auto t = fixture::killing_theory(lat, su2);
  auto d = random_cochain1(lat, su2, rng, 1e-4);
  const double a = ymt_action(t, d), b = ymt_action(t, exp_links(d));
  CHECK(std::abs(a - b) <= 1e-3 * std::abs(a));
}

TEST_CASE("BF and topological terms") {
  Rng rng(5);
  const auto su2 = catalog::su2();
  const auto lat3 = lattice({2, 2, 2});
  const auto d3 = random_cochain1(lat3, su2, rng);
  CHECK_THROWS_AS(bf_action(fixture::killing_theory(lat3, su2), d3, curvature(d3)), InputError);

  const auto lat = lattice({2, 2, 2, 2});
  const auto t = fixture::killing_theory(lat, su2);
  const auto d = random_cochain1(lat, su2, rng, 0.5);
  CHECK(bf_action(t, d, curvature(d)) == doctest::Approx(ymt_action(t, d)).epsilon(1e-12));
  // constant gauge: Ad acts on every plaquette by the same rotation
  const auto g = GaugeTransform::constant(lat, su2, random_group_element(*su2, rng));
  auto dg = d;
  const Mat ad = su2->adjoint_matrix(g.values.front());
  dg.values = ad * d.values;
  CHECK(std::abs(topological_term(t, dg) - topological_term(t, d)) < 1e-10 * std::max(1.0, std::abs(topological_term(t, d))));
  const auto full = full_ym(t, d);
  CHECK(full.total == full.ymt + full.topological);
}

TEST_CASE("abelian topological density telescopes") {
  Rng rng(7);
  const auto lat = lattice({3, 2, 3, 2});
  const auto d = random_cochain1(lat, catalog::u1k(2), rng);
  CHECK(std::abs(topological_integral(curvature(d))) < 1e-10);
}

TEST_CASE("covariant derivatives") {
  Rng rng(8);
  const auto lat = lattice({3, 3});
  const auto su2 = catalog::su2();
  const auto phi = random_section(lat, su2, rng);
  const auto zero = AlgebraCochain1::zero(lat, su2);
  CHECK((covariant_derivative(zero, phi).values - coboundary0(phi).values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((covariant_derivative(LinkField::identity(lat, su2), phi).values - coboundary0(phi).values).cwiseAbs().maxCoeff() <
        1e-15);
  // the link form brackets with phi(tgt): the two differ by [D, d phi] + O(D^2)
  auto d = random_cochain1(lat, su2, rng, 1e-5);
  const auto a = covariant_derivative(exp_links(d), phi);
  const auto b = covariant_derivative(d, phi);
  const auto dphi = coboundary0(phi);
  double worst = 0.0;
  for (Eigen::Index e = 0; e < d.values.cols(); ++e) {
    const Vec corr = bracket(*su2, d.values.col(e), dphi.values.col(e));
    worst = std::max(worst, (a.values.col(e) - b.values.col(e) - corr).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("parameterized wrapper") {
  Rng rng(9);
  const auto lat = lattice({2, 3});
  const auto su2 = catalog::su2();
  const auto t = fixture::killing_theory(lat, su2);
  const auto s = wrap_parameterized(t, {"eps"}, 3);
  CHECK(s.adjoint_residual < 1e-9);
  const auto u = random_links(lat, su2, rng, 0.4);
  CHECK(s("eps", u) == ymt_action(t, u));
  CHECK_THROWS_AS(s("other", u), InputError);
  const auto g = cochain_gram(t);
  const auto d = random_cochain1(lat, su2, rng);
  const auto w = random_cochain1(lat, su2, rng);
  // <<dD, dW>> = <<D, d* dW>>
  const double lhs = gram_pairing2(g, coboundary(d), coboundary(w));
  const double rhs = gram_pairing1(g, d, coboundary_adjoint(g, coboundary(w)));
  CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
  // u(1) Killing form vanishes: no perfect pairing
  CHECK_THROWS_AS(wrap_parameterized(fixture::killing_theory(lat, catalog::u1()), {"eps"}), PreconditionError);
  const auto custom = YMTTheory::make(PairingSpec::custom(lat, su2, [](const AlgebraCochain2&, const AlgebraCochain2&) { return 0.0; }));
  CHECK_THROWS_AS(wrap_parameterized(custom, {"eps"}), PreconditionError);
}

}

TEST_SUITE("scalar_poly") {

TEST_CASE("expansion of S[tD]") {
  Rng rng(10);
  const auto lat = lattice({3, 3, 2});
  const auto su2 = catalog::su2();
  const auto t = fixture::killing_theory(lat, su2);
  const auto d = random_cochain1(lat, su2, rng, 0.8);
  const auto p = scalar_poly(t, d);
  for (double s : {-1.7, -0.3, 0.5, 1.0, 2.4}) {
    auto ds = d;
    ds.values *= s;
    const double lhs = ymt_action(t, ds);
    CHECK(std::abs(lhs - (p.a * s * s + 2 * p.b * s * s * s + p.c * s * s * s * s)) < 1e-9 * std::max(1.0, std::abs(lhs)));
    // the invariance polynomial carries b (2t^3 - t); the exact difference has 2b (t^3 - t)
    const double diff = lhs - s * ymt_action(t, d);
    CHECK(std::abs(diff - p.eval(s) + p.b * s) < 1e-9 * std::max(1.0, std::abs(diff)));
  }
  CHECK(scalar_poly(t, AlgebraCochain1::zero(lat, su2)).is_zero());
  CHECK_THROWS_AS(scalar_poly(t, exp_links(d)), InputError);
}

TEST_CASE("abelian fields have b = c = 0") {
  Rng rng(11);
  const auto lat = lattice({3, 3});
  const auto t = fixture::killing_theory(lat, catalog::u1k(2));
  const auto tm = YMTTheory::make(PairingSpec::tensorial(lat, catalog::u1k(2), Mat::Identity(2, 2)));
  const auto p = scalar_poly(tm, random_cochain1(lat, catalog::u1k(2), rng));
  CHECK(p.b == 0.0);
  CHECK(p.c == 0.0);
  CHECK(p.a > 0.0);
  const auto r = invariance_roots(p);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == 0.0);
  CHECK(r.roots[1] == doctest::Approx(1.0).epsilon(1e-12));
  (void)t;
}

TEST_CASE("semi-nondegeneracy of the Killing pairing on su(2)") {
  Rng rng(12);
  const auto lat = lattice({3, 3});
  const auto t = fixture::killing_theory(lat, catalog::su2());
  for (int k = 0; k < 5; ++k) CHECK(scalar_poly(t, random_cochain1(lat, catalog::su2(), rng)).a != 0.0);
}

TEST_CASE("root sets") {
  CHECK(invariance_roots({0, 0, 0}).all_reals);
  const auto r = invariance_roots({0, 0, 3});
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[1] == doctest::Approx(1.0).epsilon(1e-12));
  // (1,1,1): p(t) = t (t^3 + 2 t^2 + t - 3), the cubic has one real root
  const auto q = invariance_roots({1, 1, 1});
  REQUIRE(q.roots.size() == 2);
  double lo = 0.8, hi = 0.9;
  auto cubic = [](double t) { return t * t * t + 2 * t * t + t - 3; };
  REQUIRE(cubic(lo) < 0);
  REQUIRE(cubic(hi) > 0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cubic(mid) < 0 ? lo : hi) = mid;
  }
  CHECK(q.roots[0] == 0.0);
  CHECK(std::abs(q.roots[1] - lo) < 1e-12);
  // double root: (t - 1)^2 (t + 2)
  const auto dr = real_roots({2, -3, 0, 1});
  REQUIRE(dr.size() == 2);
  CHECK(dr[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(dr[1] == doctest::Approx(1.0).epsilon(1e-9));
  Rng rng(13);
  std::normal_distribution<double> n;
  for (int k = 0; k < 300; ++k) {
    const auto rs = invariance_roots({n(rng), n(rng), n(rng)}).roots;
    CHECK(rs.size() <= 4);
    CHECK(std::is_sorted(rs.begin(), rs.end()));
  }
}

TEST_CASE("common roots over samples") {
  const auto c = common_roots({{1, 0, 0}, {0, 0, 2}});
  REQUIRE(c.roots.size() == 2);
  CHECK(c.roots[1] == doctest::Approx(1.0));
  const auto d = common_roots({{1, 0, 0}, {0, 1, 0}});
  REQUIRE(d.roots.size() == 1);
  CHECK(d.roots[0] == 0.0);
}

}
