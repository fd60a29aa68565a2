// ymt: command-line front end.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ymt/category.hpp"
#include "ymt/error.hpp"
#include "ymt/io.hpp"
#include "ymt/kernels.hpp"
#include "ymt/scalar_poly.hpp"

namespace fs = std::filesystem;
using namespace ymt;
using io::json;

namespace {

constexpr int exit_input = 2;
constexpr int exit_failed = 3;
constexpr int exit_usage = 64;

struct Opts {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string config;
  std::string in, in2, field;
  std::string lattice;
  std::string algebra = "su2";
  std::string algebra_file;
  std::string pairing = "killing";
  double amplitude = 0.4;
  int count = 4;
  int trials = 100;
  // rank
  int n = 2, l = 1, max_n = 12, max_l = 12;
  std::optional<int> q;
  bool contractible = false, parallel_abelian = false;
  std::int64_t z = 1;
  // extensions
  std::string c = "0";
  int sections = 2;
  double mu = 1.0, lambda = 0.25, vev = 1.0, kappa = 2.0;
  bool zero_only = false;
  std::string action = "sign";
  int order = 2, element = 1;
  std::string coeffs, indices;
  bool abelian_demo = false;
  double a = 0, b = 0, cc = 0;
  // category
  std::string out_dir, null_ext;
  std::vector<std::string> candidates;
};

std::string g_command;

// ---- small parsers

std::vector<int> parse_ints(const std::string& s, const char* what) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError(std::string(what) + ": '" + tok + "' is not an integer");
    }
  }
  if (v.empty()) throw InputError(std::string(what) + ": empty list");
  return v;
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(parse_rational(tok).get_d());
  if (v.empty()) throw InputError(std::string(what) + ": empty list");
  return v;
}

LatticePtr lattice_of(const std::string& spec, std::vector<int> fallback, double w = 1.0) {
  return std::make_shared<const Lattice>(spec.empty() ? std::move(fallback) : parse_ints(spec, "--lattice"), w);
}

AlgebraPtr algebra_of(const Opts& o) {
  if (!o.algebra_file.empty()) return io::algebra_from_json(io::read_json_file(o.algebra_file));
  return catalog::by_name(o.algebra);
}

PairingSpec pairing_of(const std::string& kind, LatticePtr lat, AlgebraPtr alg) {
  if (kind == "killing") return PairingSpec::killing(lat, alg);
  if (kind == "euclidean") return PairingSpec::tensorial(lat, alg, Mat::Identity(alg->dim(), alg->dim()));
  throw InputError("--pairing: expected killing or euclidean (use --config for matrix pairings)");
}

json payload_of(const json& j, const char* key) {
  if (j.is_object() && j.contains(key) && j.contains("tool")) return j.at(key);
  return j;
}

// ---- scenario

struct Scenario {
  YMTTheory theory;
  std::optional<LinkField> links;
  std::optional<AlgebraCochain1> cochain;
  std::optional<AlgebraCochain2> b;
};

Scenario scenario_of(const Opts& o, Rng& rng, std::vector<int> default_lattice) {
  Scenario s;
  json field, bj;
  if (!o.config.empty()) {
    const auto j = io::read_json_file(o.config);
    io::require_keys(j, {"lattice", "algebra", "pairing", "field", "b", "label", "extension"}, "scenario");
    if (!j.contains("lattice") || !j.contains("algebra")) throw InputError("scenario: needs lattice and algebra");
    auto lat = io::lattice_from_json(j.at("lattice"));
    auto alg = io::algebra_from_json(j.at("algebra"));
    auto p = j.contains("pairing") ? io::pairing_from_json(j.at("pairing"), lat, alg) : PairingSpec::killing(lat, alg);
    s.theory = YMTTheory::make(std::move(p), j.value("label", "scenario"));
    if (j.contains("field")) field = j.at("field");
    if (j.contains("b")) bj = j.at("b");
  } else {
    auto lat = lattice_of(o.lattice, std::move(default_lattice));
    auto alg = algebra_of(o);
    s.theory = YMTTheory::make(pairing_of(o.pairing, lat, alg), o.pairing);
  }
  const auto& lat = s.theory.lattice;
  const auto& alg = s.theory.algebra;
  if (!o.field.empty()) field = payload_of(io::read_json_file(o.field), "field");
  if (field.is_object() && field.contains("random")) {
    io::require_keys(field, {"random", "amplitude", "kind"}, "field");
    Rng r(field.at("random").get<std::uint64_t>());
    const double amp = field.value("amplitude", o.amplitude);
    if (field.value("kind", "links") == "cochain") s.cochain = random_cochain1(lat, alg, r, amp);
    else s.links = random_links(lat, alg, r, amp);
  } else if (field.is_object() && field.contains("links")) {
    s.links = io::links_from_json(field, lat, alg);
  } else if (field.is_object() && field.contains("edges")) {
    io::require_keys(field, {"lattice", "algebra", "edges"}, "field");
    s.cochain = io::cochain1_from_json(field, lat, alg);
  } else if (!field.is_null()) {
    throw InputError("field: expected {\"random\": seed}, link matrices or edge coefficients");
  } else {
    s.links = random_links(lat, alg, rng, o.amplitude);
  }
  if (bj.is_object() && bj.contains("random")) {
    Rng r(bj.at("random").get<std::uint64_t>());
    auto b = AlgebraCochain2::zero(lat, alg);
    b.values = Mat::NullaryExpr(b.values.rows(), b.values.cols(), [&] { return std::normal_distribution<double>()(r); });
    s.b = b;
  } else if (!bj.is_null()) {
    s.b = io::cochain2_from_json(bj, lat, alg);
  }
  return s;
}

// Input extension from --in, else from the scenario's "extension" block (inline or a path).
Extension extension_input(const Opts& o) {
  if (!o.in.empty()) return io::read_extension(o.in);
  if (o.config.empty()) throw InputError("need --in or a --config with an extension block");
  const auto j = io::read_json_file(o.config);
  io::require_keys(j, {"lattice", "algebra", "pairing", "field", "b", "label", "extension"}, "scenario");
  if (!j.contains("extension")) throw InputError("scenario: no extension block");
  const auto& x = j.at("extension");
  if (x.is_string()) return io::read_extension((fs::absolute(o.config).parent_path() / x.get<std::string>()).string());
  return io::extension_from_json(payload_of(x, "extension"));
}

AlgebraCochain1 cochain_of(const Scenario& s) { return s.cochain ? *s.cochain : log_links(*s.links); }

// ---- output

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else {
    rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void emit_text(const Opts& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else io::write_text_file(o.out, text);
}

void emit(const Opts& o, const std::string& key, json payload, std::string csv_table = {}) {
  if (o.format == "csv") {
    std::string body = csv_table;
    if (body.empty()) {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(payload, "", rows);
      body = "key,value\n";
      for (const auto& [k, v] : rows) body += quote_csv(k) + "," + quote_csv(v) + "\n";
    }
    emit_text(o, io::csv_header(g_command, o.seed) + body);
  } else {
    emit_text(o, io::envelope(g_command, o.seed, key, std::move(payload)).dump(2) + "\n");
  }
}

// ---- extensions on disk

struct LoadedMorphism {
  ExtMorphism m;
  std::string source_path, target_path;
};

std::string ref_from(const std::string& path, const std::string& out) {
  const auto base = out.empty() ? fs::current_path() : fs::absolute(out).parent_path();
  return fs::proximate(fs::absolute(path), base).generic_string();
}

LoadedMorphism read_morphism(const std::string& path) {
  const auto j = payload_of(io::read_json_file(path), "morphism");
  io::require_keys(j, {"source", "target", "f", "g"}, "morphism");
  const auto dir = fs::absolute(path).parent_path();
  LoadedMorphism lm;
  lm.source_path = (dir / j.at("source").get<std::string>()).lexically_normal().string();
  lm.target_path = (dir / j.at("target").get<std::string>()).lexically_normal().string();
  auto s = std::make_shared<const Extension>(io::read_extension(lm.source_path));
  auto t = lm.source_path == lm.target_path ? s : std::make_shared<const Extension>(io::read_extension(lm.target_path));
  std::vector<std::size_t> f(s->domain->size(), SIZE_MAX), g(s->correction.size(), SIZE_MAX);
  for (const auto& p : j.at("f")) {
    const auto i = p.at(0).get<std::size_t>(), k = p.at(1).get<std::size_t>();
    if (i >= f.size()) throw InputError("morphism: f index out of range");
    f[i] = k;
  }
  for (const auto& p : j.at("g")) {
    const auto src = s->correction_position(p.at(0).get<std::size_t>());
    const auto dst = t->correction_position(p.at(1).get<std::size_t>());
    if (!src || !dst) throw InputError("morphism: g pair outside the correction domains");
    g[*src] = *dst;
  }
  for (auto v : f)
    if (v == SIZE_MAX) throw InputError("morphism: f is not defined everywhere");
  for (auto v : g)
    if (v == SIZE_MAX) throw InputError("morphism: g is not defined everywhere");
  lm.m = ExtMorphism{s, t, std::move(f), std::move(g)};
  return lm;
}

void write_extension(const std::string& path, const Extension& e, const Opts& o) {
  io::write_text_file(path, io::envelope(g_command, o.seed, "extension", io::to_json(e)).dump(2) + "\n");
}

json extension_payload(const Extension& e) {
  auto j = io::to_json(e);
  if (!j.at("report").at("ok").get<bool>()) {
    std::cerr << "ymt: extension check failed\n";
  }
  return j;
}

int exit_for_report(const json& payload) {
  return payload.contains("report") && !payload.at("report").at("ok").get<bool>() ? exit_failed : 0;
}

// Demo domain for constructors working on bare connections.
DomainPtr demo_domain(const Opts& o, const LatticePtr& lat, const AlgebraPtr& alg, Rng& rng) {
  return connection_domain(lat, alg, o.count, o.amplitude, rng);
}

YMTTheory demo_theory(const Opts& o, const LatticePtr& lat, const AlgebraPtr& alg) {
  return YMTTheory::make(pairing_of(o.pairing, lat, alg), o.pairing);
}

double wilson_coupling(const LinkField& u, const VertexSection& s) {
  double acc = 0.0;
  const double d = static_cast<double>(u.links.front().rows());
  for (std::size_t p = 0; p < u.lattice->num_plaquettes(); ++p) {
    const auto bd = u.lattice->plaquette_boundary(p);
    const CMat h = u.link(bd[0]) * u.link(bd[1]) * u.link(bd[2]) * u.link(bd[3]);
    acc += s.values.col(static_cast<Eigen::Index>(u.lattice->plaquette_base(p))).squaredNorm() * (d - h.trace().real());
  }
  return acc;
}

Extension make_extension(const std::string& kind, const Opts& o, Rng& rng) {
  if (kind == "null" || kind == "identity" || kind == "constant" || kind == "retract" || kind == "background") {
    const auto lat = lattice_of(o.lattice, {3, 3});
    const auto alg = algebra_of(o);
    const auto base = demo_theory(o, lat, alg);
    auto dom = demo_domain(o, lat, alg, rng);
    if (kind == "null") {
      if (o.zero_only) dom = std::make_shared<const SampledDomain>(dom->subset({*dom->zero_index()}));
      return make_null(base, catalog::identity(alg), dom);
    }
    if (kind == "identity") return make_identity(base, dom, o.seed);
    if (kind == "constant")
      return make_constant(base, catalog::identity(alg), dom, parse_rational(o.c), random_links(lat, alg, rng, o.amplitude));
    if (kind == "retract") {
      auto prod = product_domain(*dom, o.sections, o.amplitude, rng);
      return make_retract(base, prod, projection_retract(*prod), o.seed);
    }
    const auto s = random_section(lat, alg, rng, 1.0);
    return make_background(base, s, wilson_coupling, dom, o.seed);
  }
  if (kind == "bf") {
    const auto lat = lattice_of(o.lattice, {2, 2, 2, 2});
    const auto alg = algebra_of(o);
    return make_bf(demo_theory(o, lat, alg), curvature_graph_domain(*demo_domain(o, lat, alg, rng), true));
  }
  if (kind == "higgs") {
    const auto lat = lattice_of(o.lattice, {3, 3});
    return make_higgs(demo_theory(o, lat, catalog::so3()), higgs_domain(lat, o.count, o.amplitude, rng),
                      HiggsPotential{o.lambda, o.vev}, theta_star, o.seed);
  }
  if (kind == "higgs-vacuum") {
    const auto lat = lattice_of(o.lattice, {3, 3});
    const auto base = YMTTheory::make(PairingSpec::tensorial(lat, catalog::so2(), Mat::Identity(1, 1)), "so2");
    Vec phi0 = Vec::Zero(3);
    phi0(2) = 1.0;
    return make_higgs_vacuum(base, catalog::so2_in_so3(), phi0, wilson_functional(o.mu),
                             higgs_vacuum_domain(lat, o.count, o.count, o.amplitude, rng));
  }
  if (kind == "emergence") {
    if (!(o.kappa > 0.0)) throw InputError("--kappa must be positive");
    const auto ext = o.lattice.empty() ? std::vector<int>{3, 3} : parse_ints(o.lattice, "--lattice");
    const auto lat1 = std::make_shared<const Lattice>(ext);
    const auto lat2 = std::make_shared<const Lattice>(ext, o.kappa);
    const auto alg = algebra_of(o);
    const auto t1 = demo_theory(o, lat1, alg);
    auto p2 = pairing_of(o.pairing, lat2, alg);
    for (auto& f : p2.algebra_forms) f /= o.kappa;
    p2.kind = "matrix";
    const auto t2 = YMTTheory::make(std::move(p2), "rescaled");
    const auto s1 = wrap_parameterized(t1, {"eps"}, o.seed);
    const auto s2 = wrap_parameterized(t2, {"eps"}, o.seed);
    auto gmap = [&](const LinkField& u) { return relabel(translate(Config{u, {}, {}}, 0), lat1).links; };
    return emergence_to_extension(s1, s2, {{"eps", "eps"}}, gmap, demo_domain(o, lat2, alg, rng), "eps");
  }
  throw InputError("unknown constructor '" + kind + "'");
}

// ---- commands

using Handler = std::function<int(Opts&)>;

int cmd_rank_bound(Opts& o) {
  RankQuery q{o.n, o.l, o.q, o.contractible, o.parallel_abelian};
  const auto b = rank_upper_bound(q);
  json p{{"n", o.n}, {"l", o.l}, {"fiber_rank", fiber_rank(std::max(o.n, 0), std::max(o.l, 0))}, {"bound", io::to_json(b)}};
  std::ostringstream csv;
  csv << "n,l,rank_bound\n" << o.n << ',' << o.l << ',' << b.value.str() << '\n';
  emit(o, "rank", p, csv.str());
  return 0;
}

int cmd_rank_enumerate(Opts& o) {
  const auto pts = enumerate_low_rank(o.z, o.max_n, o.max_l);
  if (o.format.empty()) o.format = "csv";
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({{"n", p.n}, {"l", p.l}, {"rank", p.rank}});
  emit(o, "rank", {{"z", o.z}, {"max_n", o.max_n}, {"max_l", o.max_l}, {"points", arr}}, io::low_rank_csv(pts));
  return 0;
}

int cmd_algebra_killing(Opts& o) {
  const auto a = algebra_of(o);
  emit(o, "algebra", {{"algebra", io::algebra_to_json(a)}, {"killing", io::to_json(killing_form(a).matrix)}});
  return 0;
}

int cmd_algebra_basis(Opts& o) {
  const auto a = algebra_of(o);
  json basis = json::array();
  for (const auto& b : invariant_form_basis(a)) basis.push_back(io::to_json(b.matrix));
  emit(o, "algebra", {{"algebra", io::algebra_to_json(a)}, {"dimension", basis.size()}, {"basis", basis}});
  return 0;
}

int cmd_field_random(Opts& o) {
  Rng rng(o.seed);
  const auto lat = lattice_of(o.lattice, {4, 4, 4, 4});
  const auto u = random_links(lat, algebra_of(o), rng, o.amplitude);
  emit(o, "field", io::to_json(u));
  return 0;
}

int cmd_field_curvature(Opts& o) {
  Rng rng(o.seed);
  const auto s = scenario_of(o, rng, {4, 4, 4, 4});
  const auto f = s.cochain ? curvature(*s.cochain) : plaquette_curvature(*s.links);
  auto p = io::to_json(f);
  p["representation"] = s.cochain ? "cochain" : "links";
  p["max_abs"] = f.values.cwiseAbs().maxCoeff();
  emit(o, "curvature", p);
  return 0;
}

int cmd_action_eval(Opts& o) {
  Rng rng(o.seed);
  const auto s = scenario_of(o, rng, {4, 4, 4, 4});
  json p;
  if (s.cochain) {
    p = {{"value", ymt_action(s.theory, *s.cochain)}, {"representation", "cochain"}, {"residuals", json::object()}};
  } else {
    p = {{"value", ymt_action(s.theory, *s.links)},
         {"representation", "links"},
         {"residuals", {{"group", s.links->group_residual()}}}};
  }
  p["pairing"] = s.theory.pairing.kind;
  emit(o, "action", p);
  return 0;
}

int cmd_action_gauge(Opts& o) {
  Rng rng(o.seed);
  const auto s = scenario_of(o, rng, {4, 4, 4, 4});
  const auto u = s.links ? *s.links : exp_links(*s.cochain);
  emit(o, "gauge", io::to_json(gauge_invariance_report(s.theory, u, o.trials, o.seed)));
  return 0;
}

int cmd_action_bf(Opts& o) {
  Rng rng(o.seed);
  const auto s = scenario_of(o, rng, {2, 2, 2, 2});
  AlgebraCochain2 b = s.b ? *s.b : AlgebraCochain2::zero(s.theory.lattice, s.theory.algebra);
  if (!s.b) b.values = Mat::NullaryExpr(b.values.rows(), b.values.cols(), [&] { return std::normal_distribution<double>()(rng); });
  const double v = s.cochain ? bf_action(s.theory, *s.cochain, b) : bf_action(s.theory, *s.links, b);
  emit(o, "action", {{"value", v}, {"b_source", s.b ? "input" : "random"}});
  return 0;
}

int cmd_action_topological(Opts& o) {
  Rng rng(o.seed);
  const auto s = scenario_of(o, rng, {3, 3, 3, 3});
  const auto full = full_ym(s.theory, cochain_of(s));
  emit(o, "action", {{"ymt", full.ymt}, {"topological", full.topological}, {"total", full.total}});
  return 0;
}

int cmd_ext_make(Opts& o, const std::string& kind) {
  Rng rng(o.seed);
  auto p = extension_payload(make_extension(kind, o, rng));
  const int code = exit_for_report(p);
  emit(o, "extension", std::move(p));
  return code;
}

int cmd_ext_sum(Opts& o) {
  const auto e = sum(extension_input(o), io::read_extension(o.in2));
  auto p = extension_payload(e);
  const int code = exit_for_report(p);
  emit(o, "extension", std::move(p));
  return code;
}

int cmd_ext_act(Opts& o) {
  const auto a = actions::by_name(o.action, o.order);
  auto p = extension_payload(act(a, o.element, extension_input(o)));
  const int code = exit_for_report(p);
  emit(o, "extension", std::move(p));
  return code;
}

GroupRingElement ring_element(const std::string& spec, int order) {
  GroupRingElement x(order);
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw InputError("--coeffs: entries are g:q");
    int g = 0;
    try {
      g = std::stoi(tok.substr(0, colon));
    } catch (const std::logic_error&) {
      throw InputError("--coeffs: bad group element in '" + tok + "'");
    }
    if (g < 0 || g >= order) throw InputError("--coeffs: group element out of range");
    x.set(g, x.coefficient(g) + parse_rational(tok.substr(colon + 1)));
  }
  return x;
}

int cmd_ext_module(Opts& o) {
  const auto a = actions::by_name(o.action, o.order);
  const auto x = ring_element(o.coeffs, o.order);
  auto p = extension_payload(module_scalar(x, a, extension_input(o)));
  p["scalar"] = x.str();
  const int code = exit_for_report(p);
  emit(o, "extension", std::move(p));
  return code;
}

int cmd_ext_restrict(Opts& o) {
  const auto e = extension_input(o);
  std::vector<std::size_t> sub;
  for (int i : parse_ints(o.indices, "--indices")) {
    if (i < 0) throw InputError("--indices: negative index");
    sub.push_back(static_cast<std::size_t>(i));
  }
  std::sort(sub.begin(), sub.end());
  auto p = extension_payload(restrict(e, sub));
  const int code = exit_for_report(p);
  emit(o, "extension", std::move(p));
  return code;
}

int cmd_ext_check(Opts& o) {
  const auto e = extension_input(o);
  const auto r = check_extension(e);
  emit(o, "check", {{"kind", e.kind}, {"report", io::to_json(r)}});
  return r.ok ? 0 : exit_failed;
}

int cmd_scalar_poly(Opts& o) {
  Rng rng(o.seed);
  ScalarPolynomial p;
  json extra;
  if (o.abelian_demo) {
    const auto lat = lattice_of(o.lattice, {3, 3});
    const auto u1 = catalog::u1();
    const auto t = YMTTheory::make(PairingSpec::tensorial(lat, u1, Mat::Identity(1, 1)), "abelian");
    p = scalar_poly(t, random_cochain1(lat, u1, rng, o.amplitude));
    extra = "abelian u(1) demo";
  } else {
    const auto s = scenario_of(o, rng, {3, 3});
    p = scalar_poly(s.theory, s.cochain ? *s.cochain : random_cochain1(s.theory.lattice, s.theory.algebra, rng, o.amplitude));
    extra = s.cochain ? "input cochain" : "random cochain";
  }
  auto j = io::to_json(p);
  j["roots"] = io::to_json(invariance_roots(p));
  j["source"] = extra;
  emit(o, "scalar_poly", j);
  return 0;
}

int cmd_roots(Opts& o) {
  json j;
  if (!o.coeffs.empty()) {
    const auto c = parse_doubles(o.coeffs, "--coeffs");
    j = {{"coefficients", c}, {"roots", real_roots(c)}};
  } else {
    const ScalarPolynomial p{o.a, o.b, o.cc};
    j = io::to_json(p);
    j["roots"] = io::to_json(invariance_roots(p));
  }
  emit(o, "roots", j);
  return 0;
}

json morphism_summary(const ExtMorphism& m) {
  return {{"report", io::to_json(check_morphism(m))},
          {"classification", io::to_json(classify(m))},
          {"probe", io::to_json(embedding_probe(m))}};
}

int cmd_cat_compose(Opts& o) {
  const auto m1 = read_morphism(o.in);
  const auto m2 = read_morphism(o.in2);
  if (m1.target_path != m2.source_path && !(m1.m.target == m2.m.source))
    throw InputError("compose: target of --in is '" + m1.target_path + "' but source of --in2 is '" + m2.source_path + "'");
  // the files were loaded separately; re-point m2 at m1's target when they name the same file
  auto second = m2.m;
  second.source = m1.m.target;
  if (m2.target_path == m1.target_path) second.target = m1.m.target;
  if (m2.target_path == m1.source_path) second.target = m1.m.source;
  const auto c = compose(second, m1.m);
  check_morphism(c, true);
  emit(o, "morphism", io::to_json(c, ref_from(m1.source_path, o.out), ref_from(m2.target_path, o.out)));
  return 0;
}

int cmd_cat_classify(Opts& o) {
  const auto m = read_morphism(o.in);
  const auto s = morphism_summary(m.m);
  emit(o, "classify", s);
  return s.at("report").at("ok").get<bool>() ? 0 : exit_failed;
}

int cmd_cat_bf_iso(Opts& o) {
  Rng rng(o.seed);
  const auto lat = lattice_of(o.lattice, {2, 2, 2, 2});
  const auto alg = algebra_of(o);
  const auto iso = bf_identity_iso(demo_theory(o, lat, alg), demo_domain(o, lat, alg, rng), o.seed);
  const auto back = compose(iso.backward, iso.forward);
  const auto there = compose(iso.forward, iso.backward);
  const auto id1 = identity_morphism(iso.identity);
  const auto id2 = identity_morphism(iso.bf);
  json p{{"forward", morphism_summary(iso.forward)},
         {"backward", morphism_summary(iso.backward)},
         {"backward_after_forward_is_identity", back.f == id1.f && back.g == id1.g},
         {"forward_after_backward_is_identity", there.f == id2.f && there.g == id2.g},
         {"domain_size", iso.identity->domain->size()}};
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    const auto d = fs::path(o.out_dir);
    write_extension((d / "identity.json").string(), *iso.identity, o);
    write_extension((d / "bf.json").string(), *iso.bf, o);
    io::write_text_file((d / "forward.json").string(),
                        io::envelope(g_command, o.seed, "morphism", io::to_json(iso.forward, "identity.json", "bf.json")).dump(2) + "\n");
    io::write_text_file((d / "backward.json").string(),
                        io::envelope(g_command, o.seed, "morphism", io::to_json(iso.backward, "bf.json", "identity.json")).dump(2) + "\n");
    p["files"] = {"identity.json", "bf.json", "forward.json", "backward.json"};
  }
  emit(o, "bf_iso", p);
  return 0;
}

int cmd_cat_terminal(Opts& o) {
  std::vector<ExtensionPtr> cands;
  ExtensionPtr nul;
  if (!o.null_ext.empty()) {
    nul = std::make_shared<const Extension>(io::read_extension(o.null_ext));
    for (const auto& c : o.candidates) cands.push_back(std::make_shared<const Extension>(io::read_extension(c)));
  } else {
    if (!o.candidates.empty()) throw InputError("--candidate needs --null");
    Rng rng(o.seed);
    const auto lat = lattice_of(o.lattice, {3, 3});
    const auto alg = algebra_of(o);
    const auto base = demo_theory(o, lat, alg);
    const auto emb = catalog::identity(alg);
    const auto dom = demo_domain(o, lat, alg, rng);
    nul = std::make_shared<const Extension>(
        make_null(base, emb, std::make_shared<const SampledDomain>(dom->subset({*dom->zero_index()}))));
    const auto prod = product_domain(*dom, o.sections, o.amplitude, rng);
    cands = {std::make_shared<const Extension>(make_identity(base, dom, o.seed)),
             std::make_shared<const Extension>(make_constant(base, emb, dom, 0, LinkField::identity(lat, alg))),
             std::make_shared<const Extension>(make_retract(base, prod, projection_retract(*prod), o.seed)),
             std::make_shared<const Extension>(
                 make_constant(base, emb, dom, parse_rational(o.c == "0" ? "1/2" : o.c), LinkField::identity(lat, alg))),
             nul};
  }
  emit(o, "terminal", io::to_json(terminal_check(cands, nul)));
  return 0;
}

const char* usage_text =
    "usage: ymt <group> <command> [options]\n"
    "  rank      bound | enumerate\n"
    "  algebra   killing | invariant-basis\n"
    "  field     random | curvature\n"
    "  action    eval | gauge-check | bf | topological\n"
    "  ext       make-{null,identity,constant,retract,bf,background,higgs,higgs-vacuum,emergence}\n"
    "            sum | act | module | restrict | check | scalar-poly | roots\n"
    "  cat       compose | classify | bf-iso | terminal\n"
    "  scalar-poly [--abelian-demo]   (alias of ext scalar-poly)\n"
    "every command accepts --seed, --out, --format json|csv; run 'ymt <group> <command> --help' for options\n";

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("YMT_THREADS")) {
    try {
      const int n = std::stoi(t);
      if (n > 0) kernels::omp::set_max_threads(n);
    } catch (const std::logic_error&) {
      std::cerr << "ymt: ignoring YMT_THREADS='" << t << "'\n";
    }
  }

  const std::vector<std::string> makers{"null", "identity", "constant", "retract", "bf",
                                        "background", "higgs", "higgs-vacuum", "emergence"};
  std::map<std::string, std::set<std::string>> surface{
      {"rank", {"bound", "enumerate"}},
      {"algebra", {"killing", "invariant-basis"}},
      {"field", {"random", "curvature"}},
      {"action", {"eval", "gauge-check", "bf", "topological"}},
      {"ext", {"sum", "act", "module", "restrict", "check", "scalar-poly", "roots"}},
      {"cat", {"compose", "classify", "bf-iso", "terminal"}},
      {"scalar-poly", {}}};
  for (const auto& m : makers) surface["ext"].insert("make-" + m);

  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::cout << usage_text;
    return args.empty() ? exit_usage : 0;
  }
  if (args[0] == "--version") {
    std::cout << "ymt " << io::version << "\n";
    return 0;
  }
  const auto grp = surface.find(args[0]);
  const bool leaf_ok = grp != surface.end() &&
                       (grp->second.empty() || (args.size() > 1 && grp->second.count(args[1]) > 0));
  if (!leaf_ok) {
    std::cerr << "ymt: unknown command '" << args[0] << (args.size() > 1 && grp != surface.end() ? " " + args[1] : "")
              << "'\n"
              << usage_text;
    return exit_usage;
  }
  g_command = "ymt";
  for (const auto& a : args) g_command += " " + a;

  Opts o;
  CLI::App app{"Yang-Mills-type theories and their extensions", "ymt"};
  app.require_subcommand(1);
  std::map<CLI::App*, Handler> handlers;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, Handler h) {
    auto* c = parent->add_subcommand(name, desc);
    c->add_option("--seed", o.seed, "64-bit seed");
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    handlers[c] = std::move(h);
    return c;
  };
  auto theory_opts = [&](CLI::App* c) {
    c->add_option("--config", o.config, "scenario JSON");
    c->add_option("--lattice", o.lattice, "extents, e.g. 4,4,4,4");
    c->add_option("--algebra", o.algebra, "catalog algebra");
    c->add_option("--algebra-file", o.algebra_file, "structure constants JSON");
    c->add_option("--pairing", o.pairing, "killing or euclidean");
    c->add_option("--field", o.field, "field JSON");
    c->add_option("--amplitude", o.amplitude, "random field amplitude");
  };
  auto domain_opts = [&](CLI::App* c) {
    c->add_option("--lattice", o.lattice, "extents");
    c->add_option("--algebra", o.algebra, "catalog algebra");
    c->add_option("--algebra-file", o.algebra_file, "structure constants JSON");
    c->add_option("--pairing", o.pairing, "killing or euclidean");
    c->add_option("--count", o.count, "random seeds of the sampled domain");
    c->add_option("--amplitude", o.amplitude, "random field amplitude");
  };

  auto* rank = app.add_subcommand("rank", "module-rank bounds");
  auto* rb = leaf(rank, "bound", "upper bound on the rank of the pairing module", cmd_rank_bound);
  rb->add_option("--n", o.n)->required();
  rb->add_option("--l", o.l)->required();
  rb->add_option("--q", o.q, "q-connectedness");
  rb->add_flag("--contractible", o.contractible);
  rb->add_flag("--parallelizable-abelian", o.parallel_abelian);
  auto* re = leaf(rank, "enumerate", "(n, l) pairs with trivial-bundle rank <= z", cmd_rank_enumerate);
  re->add_option("--z", o.z)->required();
  re->add_option("--max-n", o.max_n);
  re->add_option("--max-l", o.max_l);

  auto* alg = app.add_subcommand("algebra", "Lie algebra data");
  for (auto [name, h] : {std::pair<const char*, Handler>{"killing", cmd_algebra_killing},
                         std::pair<const char*, Handler>{"invariant-basis", cmd_algebra_basis}}) {
    auto* c = leaf(alg, name, name, h);
    c->add_option("--algebra", o.algebra);
    c->add_option("--algebra-file", o.algebra_file);
  }

  auto* field = app.add_subcommand("field", "lattice fields");
  auto* fr = leaf(field, "random", "random link field", cmd_field_random);
  fr->add_option("--lattice", o.lattice);
  fr->add_option("--algebra", o.algebra);
  fr->add_option("--amplitude", o.amplitude);
  theory_opts(leaf(field, "curvature", "plaquette curvature", cmd_field_curvature));

  auto* action = app.add_subcommand("action", "action functionals");
  theory_opts(leaf(action, "eval", "YMT action", cmd_action_eval));
  auto* gc = leaf(action, "gauge-check", "gauge invariance report", cmd_action_gauge);
  theory_opts(gc);
  gc->add_option("--trials", o.trials);
  theory_opts(leaf(action, "bf", "BF action", cmd_action_bf));
  theory_opts(leaf(action, "topological", "YMT plus topological term", cmd_action_topological));

  auto* ext = app.add_subcommand("ext", "extensions");
  for (const auto& m : makers) {
    auto* c = leaf(ext, "make-" + m, m + " extension on a demo domain", [m](Opts& op) { return cmd_ext_make(op, m); });
    domain_opts(c);
    if (m == "constant") c->add_option("--c", o.c, "constant correction (p/q)");
    if (m == "retract") c->add_option("--sections", o.sections);
    if (m == "higgs-vacuum") c->add_option("--mu", o.mu);
    if (m == "higgs") {
      c->add_option("--lambda", o.lambda);
      c->add_option("--vev", o.vev);
    }
    if (m == "emergence") c->add_option("--kappa", o.kappa);
    if (m == "null") c->add_flag("--zero-only", o.zero_only, "domain = zero configuration only");
  }
  auto* es = leaf(ext, "sum", "pointwise sum", cmd_ext_sum);
  es->add_option("--in", o.in, "extension file");
  es->add_option("--config", o.config, "scenario with an extension block");
  es->add_option("--in2", o.in2)->required();
  auto* ea = leaf(ext, "act", "pulled-back group action", cmd_ext_act);
  ea->add_option("--in", o.in, "extension file");
  ea->add_option("--config", o.config, "scenario with an extension block");
  ea->add_option("--action", o.action, "trivial, sign, affine-flip");
  ea->add_option("--order", o.order);
  ea->add_option("--element", o.element);
  auto* em = leaf(ext, "module", "group-ring scalar", cmd_ext_module);
  em->add_option("--in", o.in, "extension file");
  em->add_option("--config", o.config, "scenario with an extension block");
  em->add_option("--action", o.action);
  em->add_option("--order", o.order);
  em->add_option("--coeffs", o.coeffs, "g:q list, e.g. 0:1/2,1:3")->required();
  auto* er = leaf(ext, "restrict", "restriction to a closed subset", cmd_ext_restrict);
  er->add_option("--in", o.in, "extension file");
  er->add_option("--config", o.config, "scenario with an extension block");
  er->add_option("--indices", o.indices)->required();
  auto* ec = leaf(ext, "check", "decomposition check", cmd_ext_check);
  ec->add_option("--in", o.in, "extension file");
  ec->add_option("--config", o.config, "scenario with an extension block");
  for (CLI::App* parent : {ext, static_cast<CLI::App*>(&app)}) {
    auto* sp = leaf(parent, "scalar-poly", "scalar-invariance polynomial", cmd_scalar_poly);
    theory_opts(sp);
    sp->add_flag("--abelian-demo", o.abelian_demo);
  }
  auto* rt = leaf(ext, "roots", "invariance roots of (a, b, c) or real roots of --coeffs", cmd_roots);
  rt->add_option("--a", o.a);
  rt->add_option("--b", o.b);
  rt->add_option("--c", o.cc);
  rt->add_option("--coeffs", o.coeffs, "ascending coefficients");

  auto* cat = app.add_subcommand("cat", "category of extensions");
  auto* cc = leaf(cat, "compose", "second after first", cmd_cat_compose);
  cc->add_option("--in", o.in, "first morphism")->required();
  cc->add_option("--in2", o.in2, "second morphism")->required();
  auto* cl = leaf(cat, "classify", "mono / epi / iso", cmd_cat_classify);
  cl->add_option("--in", o.in)->required();
  auto* bi = leaf(cat, "bf-iso", "BF and identity extensions with the isomorphism", cmd_cat_bf_iso);
  domain_opts(bi);
  bi->add_option("--out-dir", o.out_dir, "also write the extensions and morphisms here");
  auto* te = leaf(cat, "terminal", "terminal-object check", cmd_cat_terminal);
  domain_opts(te);
  te->add_option("--null", o.null_ext, "null extension file");
  te->add_option("--candidate", o.candidates, "candidate extension files");
  te->add_option("--sections", o.sections);
  te->add_option("--c", o.c, "constant of the obstructed demo candidate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ymt: " << e.what() << "\n";
    return exit_input;
  }

  CLI::App* chosen = nullptr;
  for (auto& [sub, h] : handlers)
    if (sub->parsed()) chosen = sub;
  try {
    if (!chosen) throw InputError("no command selected");
    if (o.format.empty() && chosen->get_name() != "enumerate") o.format = "json";
    return handlers.at(chosen)(o);
  } catch (const InputError& e) {
    std::cerr << "ymt: input error: " << e.what() << "\n";
    return exit_input;
  } catch (const PreconditionError& e) {
    std::cerr << "ymt: precondition failed: " << e.what() << "\n";
    return exit_failed;
  } catch (const VerificationError& e) {
    std::cerr << "ymt: verification failed: " << e.what() << "\n";
    return exit_failed;
  } catch (const json::exception& e) {
    std::cerr << "ymt: input error: " << e.what() << "\n";
    return exit_input;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "ymt: input error: " << e.what() << "\n";
    return exit_input;
  }
}
