// Acceptance run: one PASS/FAIL line per criterion.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "support.hpp"
#include "ymt/scalar_poly.hpp"

using namespace ymt;
using fixture::lattice;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome gauge_invariance() {
  Outcome o;
  Rng rng(11);
  const auto lat = lattice({4, 4, 4, 4});
  const auto su2 = catalog::su2();
  const auto t = fixture::killing_theory(lat, su2);
  const auto u = random_links(lat, su2, rng, 0.5);
  const auto rep = gauge_invariance_report(t, u, 100, 12);
  const double rel = rep.max_deviation / std::abs(rep.reference);
  o.pass = rel <= 1e-10 && rep.trials == 100;
  int flagged = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng r2(1000 + s);
    Mat form = killing_form(su2).matrix;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) form(i, j) += std::normal_distribution<double>(0.0, 0.5)(r2);
    const auto bad = YMTTheory::make(PairingSpec::tensorial(lat, su2, form), "perturbed");
    if (!gauge_invariance_report(bad, u, 4, 2000 + s).invariant) ++flagged;
  }
  o.pass = o.pass && flagged == 20;
  o.detail = "relative deviation " + fmt(rel) + " over 100 gauges; perturbed forms flagged " + std::to_string(flagged) + "/20";
  return o;
}

Outcome pairing_classification() {
  Outcome o;
  std::ostringstream os;
  const std::vector<std::pair<AlgebraPtr, int>> cases{{catalog::su2(), 1}, {catalog::u1k(2), 4}, {catalog::su2_u1(), 2}};
  for (const auto& [a, want] : cases) {
    const int got = static_cast<int>(invariant_form_basis(a).size());
    const int oracle = fixture::invariant_dim_oracle(*a);
    o.pass = o.pass && got == want && oracle == want;
    os << a->name() << " " << got << " (oracle " << oracle << ") ";
  }
  o.detail = os.str();
  return o;
}

Outcome rank_bounds() {
  const auto b21 = rank_upper_bound({2, 1, std::nullopt, false, false});
  const auto b23 = rank_upper_bound({2, 3, std::nullopt, true, false});
  const auto e7 = enumerate_low_rank(7, 12, 12);
  const auto e1 = enumerate_low_rank(1, 12, 12);
  Outcome o;
  o.pass = b21.value == Fraction::make(4, 1) && b23.value == Fraction::make(10, 1) && e7.size() == 2 &&
           e7[0].n == 2 && e7[0].l == 1 && e7[1].n == 2 && e7[1].l == 2 && e1.empty();
  o.detail = "(2,1) -> " + b21.value.str() + ", equality (2,3) -> " + b23.value.str() + ", |enum(7)| = " +
             std::to_string(e7.size()) + ", |enum(1)| = " + std::to_string(e1.size());
  return o;
}

Outcome curvature_fidelity() {
  Rng rng(21);
  const auto lat = lattice({3, 3, 3, 3});
  const auto su2 = catalog::su2();
  const auto a = fixture::closed_cochain(lat, su2, rng);
  const auto b = random_cochain1(lat, su2, rng, 1.0);
  auto err = [&](double eps) {
    auto d = AlgebraCochain1::zero(lat, su2);
    d.values = eps * a.values + eps * eps * b.values;
    const auto log_hol = plaquette_curvature(exp_links(d));
    const auto f = curvature(d);
    return (log_hol.values - f.values).cwiseAbs().maxCoeff();
  };
  const double e2 = err(1e-2), e3 = err(1e-3);
  const double order = std::log10(e2 / e3);
  const double c2 = e2 / 1e-6, c3 = e3 / 1e-9;
  Outcome o;
  o.pass = order >= 2.9 && c3 <= 2.0 * c2;
  o.detail = "error " + fmt(e2) + " at 1e-2, " + fmt(e3) + " at 1e-3, fitted order " + fmt(order) + ", C " + fmt(std::max(c2, c3));
  return o;
}

Outcome decomposition() {
  Outcome o;
  std::ostringstream os;
  std::size_t min_samples = SIZE_MAX;
  double worst = 0.0;
  auto record = [&](const Extension& e) {
    const auto r = check_extension(e);
    min_samples = std::min(min_samples, r.samples);
    worst = std::max(worst, r.decomposition_residual / r.decomposition_scale);
    const bool ok = r.ok && r.samples >= 64 && r.decomposition_residual <= 1e-9 * r.decomposition_scale;
    o.pass = o.pass && ok;
    if (!ok) os << e.kind << " failed; ";
  };
  auto run = [&](const char* name, const std::function<Extension()>& make) {
    try {
      record(make());
    } catch (const std::exception& ex) {
      o.pass = false;
      os << name << " threw: " << ex.what() << "; ";
    }
  };

  Rng rng(31);
  const auto su2 = catalog::su2();
  const auto lat4 = lattice({2, 2, 2, 2});
  const auto base4 = fixture::killing_theory(lat4, su2);
  const auto conn4 = connection_domain(lat4, su2, 16, 0.4, rng);
  const auto lat2 = lattice({3, 3});
  const auto base2 = fixture::killing_theory(lat2, su2);
  const auto conn2 = connection_domain(lat2, su2, 16, 0.4, rng);

  run("null", [&] { return make_null(base2, catalog::identity(su2), conn2); });
  run("identity", [&] { return make_identity(base2, conn2); });
  run("constant", [&] { return make_constant(base2, catalog::identity(su2), conn2, mpq_class(5, 7), random_links(lat2, su2, rng, 0.3)); });
  run("retract", [&] {
    auto small = connection_domain(lat2, su2, 4, 0.4, rng);
    auto dom = product_domain(*small, 3, 0.5, rng);
    return make_retract(base2, dom, projection_retract(*dom));
  });
  run("bf", [&] { return make_bf(base4, curvature_graph_domain(*conn4, true)); });
  run("higgs", [&] {
    const auto so3 = catalog::so3();
    const auto lat = lattice({3, 3});
    return make_higgs(fixture::killing_theory(lat, so3), higgs_domain(lat, 6, 0.4, rng), HiggsPotential{});
  });
  run("higgs-vacuum", [&] {
    const auto lat = lattice({3, 3});
    const auto so2 = catalog::so2();
    const auto base = YMTTheory::make(PairingSpec::tensorial(lat, so2, Mat::Identity(1, 1)), "so2");
    Vec phi0 = Vec::Zero(3);
    phi0(2) = 1.0;
    return make_higgs_vacuum(base, catalog::so2_in_so3(), phi0, wilson_functional(0.5),
                             higgs_vacuum_domain(lat, 8, 8, 0.4, rng));
  });
  run("background", [&] {
    const auto s = random_section(lat2, su2, rng, 1.0);
    auto coupling = [](const LinkField& u, const VertexSection& sec) {
      double acc = 0.0;
      for (std::size_t p = 0; p < u.lattice->num_plaquettes(); ++p) {
        const auto bd = u.lattice->plaquette_boundary(p);
        const CMat h = u.link(bd[0]) * u.link(bd[1]) * u.link(bd[2]) * u.link(bd[3]);
        acc += sec.values.col(static_cast<Eigen::Index>(u.lattice->plaquette_base(p))).squaredNorm() * (2.0 - h.trace().real());
      }
      return acc;
    };
    return make_background(base2, s, coupling, conn2);
  });
  run("emergence", [&] {
    const auto lat_b = lattice({3, 3}, 2.0);
    const auto t2 = YMTTheory::make(PairingSpec::tensorial(lat_b, su2, 0.5 * killing_form(su2).matrix), "rescaled");
    const auto s1 = wrap_parameterized(base2, {"g1", "g2"});
    const auto s2 = wrap_parameterized(t2, {"h1", "h2"});
    const auto dom = connection_domain(lat_b, su2, 16, 0.4, rng);
    auto gmap = [&](const LinkField& u) { return relabel(translate(Config{u, {}, {}}, 0), lat2).links; };
    return emergence_to_extension(s1, s2, {{"h1", "g1"}, {"h2", "g2"}}, gmap, dom, "h1");
  });
  o.detail = os.str() + "9 constructors, min samples " + std::to_string(min_samples) + ", worst relative residual " + fmt(worst);
  return o;
}

Outcome scalar_polynomial() {
  Outcome o;
  Rng rng(41);
  const auto lat = lattice({3, 3});
  const auto su2 = catalog::su2();
  const auto t = fixture::killing_theory(lat, su2);
  const auto d = random_cochain1(lat, su2, rng, 0.7);
  const auto p = scalar_poly(t, d);
  double worst = 0.0;
  std::uniform_real_distribution<double> td(-2.0, 2.0);
  for (int k = 0; k < 5; ++k) {
    const double s = td(rng);
    auto ds = d;
    ds.values *= s;
    const double lhs = ymt_action(t, ds);
    const double rhs = p.a * s * s + 2 * p.b * s * s * s + p.c * s * s * s * s;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  const auto r1 = invariance_roots({2.5, 0, 0});
  const auto r2 = invariance_roots({0, -1.5, 0});
  const double h = std::sqrt(2.0) / 2;
  const bool ok1 = r1.roots.size() == 2 && std::abs(r1.roots[0]) <= 1e-12 && std::abs(r1.roots[1] - 1) <= 1e-12;
  const bool ok2 = r2.roots.size() == 3 && std::abs(r2.roots[0] + h) <= 1e-12 && std::abs(r2.roots[1]) <= 1e-12 &&
                   std::abs(r2.roots[2] - h) <= 1e-12;
  std::size_t most = 0;
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) most = std::max(most, invariance_roots({nd(rng), nd(rng), nd(rng)}).roots.size());
  o.pass = worst <= 1e-9 && ok1 && ok2 && most <= 4;
  o.detail = "expansion deviation " + fmt(worst) + ", roots (a,0,0) " + (ok1 ? "{0,1}" : "wrong") + ", (0,b,0) " +
             (ok2 ? "{0,+-sqrt2/2}" : "wrong") + ", max root count " + std::to_string(most);
  return o;
}

Outcome algebraic_laws() {
  Outcome o;
  std::ostringstream os;
  Rng rng(51);
  const auto lat = lattice({3, 3});
  const auto su2 = catalog::su2();
  const auto base = fixture::killing_theory(lat, su2);
  const auto emb = catalog::identity(su2);
  const auto dom = connection_domain(lat, su2, 10, 0.4, rng);
  const auto e1 = make_identity(base, dom);
  const auto e2 = make_constant(base, emb, e1.domain, mpq_class(3, 7), random_links(lat, su2, rng, 0.3));
  const auto e3 = make_constant(base, emb, e1.domain, mpq_class(-2, 5), LinkField::identity(lat, su2));
  const auto nul = make_null(base, emb, e1.domain);
  auto check = [&](bool ok, const char* law) {
    o.pass = o.pass && ok;
    if (!ok) os << law << " fails; ";
  };

  check(fixture::same_values(sum(sum(e1, e2), e3), sum(e1, sum(e2, e3))), "associativity");
  check(fixture::same_values(sum(e1, e2), sum(e2, e1)), "commutativity");
  {
    const auto en = sum(e2, nul);
    const auto z = *e1.domain->zero_index();
    const auto p = *e2.correction_position(z);
    check(en.s_hat == e2.s_hat && en.correction == std::vector<std::size_t>{z} && en.c[0] == e2.c[p] &&
              en.base_on_delta[0] == e2.base_on_delta[p],
          "null neutrality");
  }
  const auto sg = actions::sign();
  check(fixture::same_values(act(sg, 0, e1), e1), "neutral action");
  check(fixture::same_values(act(sg, 1, act(sg, 1, e1)), e1), "involution");
  check(fixture::same_values(act(sg, sg.compose(1, 1), e2), act(sg, 1, act(sg, 1, e2))), "composition");
  check(fixture::same_values(act(sg, 1, sum(e1, e2)), sum(act(sg, 1, e1), act(sg, 1, e2))), "additivity over sums");

  GroupRingElement x(2), y(2);
  x.set(0, mpq_class(1, 2));
  x.set(1, 3);
  y.set(0, -2);
  y.set(1, mpq_class(5, 4));
  check(fixture::same_values(module_scalar(GroupRingElement::unit(2), sg, e1), e1), "unit");
  check(fixture::same_values(module_scalar(x + y, sg, e1), sum(module_scalar(x, sg, e1), module_scalar(y, sg, e1))),
        "scalar distributivity");
  check(fixture::same_values(module_scalar(x, sg, sum(e1, e2)), sum(module_scalar(x, sg, e1), module_scalar(x, sg, e2))),
        "vector distributivity");
  check(fixture::same_values(module_scalar(x * y, sg, e3), module_scalar(x, sg, module_scalar(y, sg, e3))),
        "scalar associativity");
  {
    const auto z = module_scalar(x + (-x), sg, e2);
    check(std::all_of(z.s_hat.begin(), z.s_hat.end(), [](const mpq_class& v) { return v == 0; }), "additive inverse");
  }
  o.detail = os.str() + "laws checked exactly on " + std::to_string(e1.domain->size()) + " configurations";
  if (e1.domain->size() < 32) o.pass = false;
  return o;
}

Outcome category() {
  Outcome o;
  std::ostringstream os;
  Rng rng(61);
  const auto su2 = catalog::su2();
  const auto lat4 = lattice({2, 2, 2, 2});
  const auto base4 = fixture::killing_theory(lat4, su2);
  const auto iso = bf_identity_iso(base4, connection_domain(lat4, su2, 4, 0.4, rng));
  const auto c = classify(iso.forward);
  const auto there_back = compose(iso.backward, iso.forward);
  const auto back_there = compose(iso.forward, iso.backward);
  const auto id1 = identity_morphism(iso.identity);
  const auto id2 = identity_morphism(iso.bf);
  const bool bf_ok = c.iso && there_back.f == id1.f && there_back.g == id1.g && back_there.f == id2.f && back_there.g == id2.g;
  os << "bf iso " << (bf_ok ? "with two-sided inverse" : "FAILED") << "; ";

  const auto lat = lattice({3, 3});
  const auto base = fixture::killing_theory(lat, su2);
  const auto emb = catalog::identity(su2);
  const auto conn = connection_domain(lat, su2, 4, 0.4, rng);
  const auto zero_dom = std::make_shared<const SampledDomain>(conn->subset({*conn->zero_index()}));
  const auto nul = std::make_shared<const Extension>(make_null(base, emb, zero_dom));
  const auto small = connection_domain(lat, su2, 2, 0.4, rng);
  const auto prod = product_domain(*small, 2, 0.5, rng);
  std::vector<ExtensionPtr> cands{
      std::make_shared<const Extension>(make_identity(base, conn)),
      std::make_shared<const Extension>(make_constant(base, emb, conn, 0, LinkField::identity(lat, su2))),
      std::make_shared<const Extension>(make_retract(base, prod, projection_retract(*prod))),
      nul};
  const auto term = terminal_check(cands, nul);
  const auto bad = terminal_check(
      {std::make_shared<const Extension>(make_constant(base, emb, conn, mpq_class(1, 2), LinkField::identity(lat, su2)))}, nul);
  const bool term_ok = term.terminal && !bad.terminal && !bad.witnesses[0].exists && !bad.witnesses[0].obstruction.empty();
  os << "null terminal over " << cands.size() << " candidates " << (term.terminal ? "yes" : "no") << ", c != 0 obstruction "
     << (bad.witnesses[0].exists ? "missed" : "detected") << "; ";

  const auto corpus = fixture::conservativity_corpus(500, 62);
  std::size_t counter = 0, isos = 0;
  for (const auto& m : corpus.morphisms) {
    const auto p = embedding_probe(m);
    counter += p.counterexample ? 1 : 0;
    isos += p.ext_iso ? 1 : 0;
  }
  os << "conservativity: " << counter << " counterexamples over " << corpus.morphisms.size() << " morphisms (" << isos
     << " isomorphisms)";
  o.pass = bf_ok && term_ok && counter == 0 && corpus.morphisms.size() >= 500;
  o.detail = os.str();
  return o;
}

Outcome thooft_polyakov() {
  Rng rng(71);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double p = ang(rng), a = ang(rng);
    const Mat m = theta_star_matrix(p, a);
    Mat paper(3, 3);
    paper << 0, -std::cos(a), -std::cos(p) * std::sin(a), std::cos(a), 0, -std::sin(p) * std::sin(a),
        std::cos(p) * std::sin(a), std::sin(p) * std::sin(a), 0;
    worst = std::max({worst, (m - paper).cwiseAbs().maxCoeff(), (m + m.transpose()).cwiseAbs().maxCoeff(),
                      std::abs(theta_star(p, a).norm() - 1.0)});
  }
  Vec e0(3), e1(3);
  e0 << 0, 0, 1;
  e1 << 1, 0, 0;
  const double anchors = std::max((theta_star(0, 0) - e0).cwiseAbs().maxCoeff(),
                                  (theta_star(std::numbers::pi / 2, std::numbers::pi / 2) - e1).cwiseAbs().maxCoeff());
  Outcome o;
  o.pass = worst <= 1e-12 && anchors <= 1e-12;
  o.detail = "max deviation " + fmt(worst) + " over 100 angles, anchors " + fmt(anchors);
  return o;
}

Outcome topological() {
  Rng rng(81);
  const auto lat = lattice({3, 3, 3, 3});
  const auto u1 = catalog::u1();
  const auto d = random_cochain1(lat, u1, rng, 1.0);
  const double top = topological_integral(curvature(d));
  const auto su2 = catalog::su2();
  const auto t = fixture::killing_theory(lat, su2);
  const auto dn = random_cochain1(lat, su2, rng, 0.5);
  const auto full = full_ym(t, dn);
  const bool exact = full.total == full.ymt + full.topological && full.ymt == ymt_action(t, dn) &&
                     full.topological == topological_term(t, dn);
  Outcome o;
  o.pass = std::abs(top) <= 1e-10 && exact;
  o.detail = "abelian F cup F sum " + fmt(top) + ", full YM split " + (exact ? "exact" : "inexact");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"gauge invariance", gauge_invariance},   {"pairing classification", pairing_classification},
      {"rank bounds", rank_bounds},             {"curvature fidelity", curvature_fidelity},
      {"decomposition identity", decomposition}, {"scalar polynomial", scalar_polynomial},
      {"algebraic laws", algebraic_laws},       {"category", category},
      {"t'Hooft-Polyakov", thooft_polyakov},    {"topological term", topological}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
