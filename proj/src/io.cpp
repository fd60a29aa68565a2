#include "ymt/io.hpp"

#include <fstream>
#include <sstream>

#include "ymt/error.hpp"

namespace ymt::io {

namespace {

const json& at(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing key '" + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key, const char* what) {
  try {
    return at(j, key, what).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string(what) + ": bad value for '" + key + "': " + e.what());
  }
}

json rationals(const std::vector<mpq_class>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(format_rational(q));
  return a;
}

std::vector<mpq_class> rationals_from(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of rationals");
  std::vector<mpq_class> out;
  for (const auto& x : j) {
    if (x.is_string()) out.push_back(parse_rational(x.get<std::string>()));
    else if (x.is_number()) out.push_back(exact(x.get<double>()));
    else throw InputError(std::string(what) + ": rationals are strings \"p/q\" or numbers");
  }
  return out;
}

json link_list(const LinkField& u) {
  json a = json::array();
  for (std::size_t e = 0; e < u.links.size(); ++e) a.push_back(json::array({e, to_json(u.links[e])}));
  return a;
}

LinkField link_list_from(const json& j, LatticePtr lat, AlgebraPtr alg) {
  auto u = LinkField::identity(lat, alg);
  if (!j.is_array()) throw InputError("links: expected [[edge, matrix], ...]");
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2) throw InputError("links: entries are [edge, matrix]");
    const auto e = item[0].get<std::size_t>();
    if (e >= u.links.size()) throw InputError("links: edge index out of range");
    auto m = cmat_from_json(item[1]);
    if (m.rows() != u.links[e].rows() || m.cols() != u.links[e].cols()) throw InputError("links: matrix has wrong size");
    u.links[e] = std::move(m);
  }
  return u;
}

json cell_list(const Mat& values) {
  json a = json::array();
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    if (values.col(c).isZero(0.0)) continue;
    json coeffs = json::array();
    for (Eigen::Index r = 0; r < values.rows(); ++r) coeffs.push_back(values(r, c));
    a.push_back(json::array({c, coeffs}));
  }
  return a;
}

Mat cell_list_from(const json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
  Mat m = Mat::Zero(rows, cols);
  if (!j.is_array()) throw InputError(std::string(what) + ": expected [[cell, [coeffs]], ...]");
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[1].is_array())
      throw InputError(std::string(what) + ": entries are [cell, [coeffs]]");
    const auto c = item[0].get<Eigen::Index>();
    if (c < 0 || c >= cols) throw InputError(std::string(what) + ": cell index out of range");
    if (static_cast<Eigen::Index>(item[1].size()) != rows)
      throw InputError(std::string(what) + ": coefficient vector has wrong length");
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = item[1][r].get<double>();
  }
  return m;
}

bool is_catalog(const AlgebraPtr& a) {
  try {
    return catalog::by_name(a->name()) == a;
  } catch (const InputError&) {
    return false;
  }
}

}  // namespace

void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw InputError(std::string(what) + ": unknown key '" + k + "'");
  }
}

json to_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(row);
  }
  return a;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("matrix: expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) throw InputError("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw InputError("matrix: entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

json to_json(const CMat& m) { return {{"re", to_json(Mat(m.real()))}, {"im", to_json(Mat(m.imag()))}}; }

CMat cmat_from_json(const json& j) {
  require_keys(j, {"re", "im"}, "complex matrix");
  const Mat re = mat_from_json(at(j, "re", "complex matrix"));
  const Mat im = mat_from_json(at(j, "im", "complex matrix"));
  if (re.rows() != im.rows() || re.cols() != im.cols()) throw InputError("complex matrix: re and im differ in shape");
  CMat m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

json to_json(const Lattice& lat) { return {{"extents", lat.extents()}, {"volume_weight", lat.volume_weight()}}; }

LatticePtr lattice_from_json(const json& j) {
  require_keys(j, {"extents", "volume_weight"}, "lattice");
  auto ext = get<std::vector<int>>(j, "extents", "lattice");
  const double w = j.contains("volume_weight") ? get<double>(j, "volume_weight", "lattice") : 1.0;
  return std::make_shared<const Lattice>(std::move(ext), w);
}

AlgebraPtr algebra_from_json(const json& j) {
  if (j.is_string()) return catalog::by_name(j.get<std::string>());
  require_keys(j, {"name", "dim", "c"}, "algebra");
  const auto name = get<std::string>(j, "name", "algebra");
  const int dim = get<int>(j, "dim", "algebra");
  if (dim < 1) throw InputError("algebra: dim must be positive");
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (const auto& t : at(j, "c", "algebra")) {
    if (!t.is_array() || t.size() != 4) throw InputError("algebra: structure constants are [i, j, k, value]");
    const int i = t[0].get<int>(), jj = t[1].get<int>(), k = t[2].get<int>();
    if (i < 0 || jj < 0 || k < 0 || i >= dim || jj >= dim || k >= dim) throw InputError("algebra: index out of range");
    c[(i * dim + jj) * dim + k] = t[3].get<double>();
  }
  return std::make_shared<const LieAlgebra>(name, dim, std::move(c));
}

json algebra_to_json(const AlgebraPtr& a) {
  if (is_catalog(a)) return a->name();
  json c = json::array();
  const int l = a->dim();
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      for (int k = 0; k < l; ++k)
        if (a->c(i, j, k) != 0.0) c.push_back(json::array({i, j, k, a->c(i, j, k)}));
  return {{"name", a->name()}, {"dim", l}, {"c", c}};
}

GroupEmbedding embedding_from_name(const std::string& name) {
  if (name == "so2->so3") return catalog::so2_in_so3();
  if (name == "u1->su2") return catalog::u1_in_su2();
  if (name.rfind("id:", 0) == 0) return catalog::identity(catalog::by_name(name.substr(3)));
  throw InputError("unknown embedding '" + name + "'");
}

json to_json(const PairingSpec& p) {
  if (!p.linear || p.kind == "custom")
    throw InputError("custom pairings are code, not data; they cannot be written to a file");
  const Mat id = Mat::Identity(p.form2.rows(), p.form2.cols());
  if (p.kind == "killing" && p.form2 == id && p.algebra_forms.size() == 1 &&
      p.algebra_forms.front() == killing_form(p.algebra).matrix)
    return {{"kind", "killing"}};
  json j{{"kind", "matrix"}, {"form2", to_json(p.form2)}};
  if (p.algebra_forms.size() == 1) {
    j["algebra_form"] = to_json(p.algebra_forms.front());
  } else {
    json forms = json::array();
    for (const auto& f : p.algebra_forms) forms.push_back(to_json(f));
    j["forms"] = forms;
  }
  return j;
}

PairingSpec pairing_from_json(const json& j, LatticePtr lat, AlgebraPtr alg) {
  require_keys(j, {"kind", "algebra_form", "form2", "forms"}, "pairing");
  const auto kind = get<std::string>(j, "kind", "pairing");
  PairingSpec p;
  if (kind == "killing") {
    p = PairingSpec::killing(lat, alg);
  } else if (kind == "matrix") {
    if (j.contains("forms")) {
      std::vector<Mat> forms;
      for (const auto& f : j.at("forms")) forms.push_back(mat_from_json(f));
      p = PairingSpec::position_dependent(lat, alg, std::move(forms));
    } else {
      p = PairingSpec::tensorial(lat, alg, mat_from_json(at(j, "algebra_form", "pairing")));
    }
  } else if (kind == "custom") {
    throw InputError("pairing: custom pairings are code, not data; use the library API");
  } else {
    throw InputError("pairing: unknown kind '" + kind + "'");
  }
  if (j.contains("form2")) p.form2 = mat_from_json(j.at("form2"));
  p.validate();
  return p;
}

json to_json(const YMTTheory& t) {
  return {{"lattice", to_json(*t.lattice)},
          {"algebra", algebra_to_json(t.algebra)},
          {"pairing", to_json(t.pairing)},
          {"label", t.label}};
}

YMTTheory theory_from_json(const json& j) {
  require_keys(j, {"lattice", "algebra", "pairing", "label"}, "theory");
  auto lat = lattice_from_json(at(j, "lattice", "theory"));
  auto alg = algebra_from_json(at(j, "algebra", "theory"));
  auto p = pairing_from_json(at(j, "pairing", "theory"), lat, alg);
  return YMTTheory::make(std::move(p), j.contains("label") ? get<std::string>(j, "label", "theory") : "ymt");
}

json to_json(const LinkField& u) {
  return {{"lattice", to_json(*u.lattice)}, {"algebra", algebra_to_json(u.algebra)}, {"links", link_list(u)}};
}

LinkField links_from_json(const json& j, LatticePtr lat, AlgebraPtr alg) {
  require_keys(j, {"lattice", "algebra", "links", "edges"}, "link field");
  if (j.contains("links")) return link_list_from(j.at("links"), lat, alg);
  // algebra coordinates of the link logarithms
  return exp_links(cochain1_from_json(j, lat, alg));
}

json to_json(const AlgebraCochain1& d) {
  return {{"lattice", to_json(*d.lattice)}, {"algebra", algebra_to_json(d.algebra)}, {"edges", cell_list(d.values)}};
}

AlgebraCochain1 cochain1_from_json(const json& j, LatticePtr lat, AlgebraPtr alg) {
  auto d = AlgebraCochain1::zero(lat, alg);
  d.values = cell_list_from(at(j, "edges", "cochain"), alg->dim(), static_cast<Eigen::Index>(lat->num_edges()), "edges");
  return d;
}

json to_json(const AlgebraCochain2& w) {
  return {{"lattice", to_json(*w.lattice)},
          {"algebra", algebra_to_json(w.algebra)},
          {"plaquettes", cell_list(w.values)}};
}

AlgebraCochain2 cochain2_from_json(const json& j, LatticePtr lat, AlgebraPtr alg) {
  require_keys(j, {"lattice", "algebra", "plaquettes"}, "2-cochain");
  auto w = AlgebraCochain2::zero(lat, alg);
  w.values = cell_list_from(at(j, "plaquettes", "2-cochain"), alg->dim(),
                            static_cast<Eigen::Index>(lat->num_plaquettes()), "plaquettes");
  return w;
}

json to_json(const VertexSection& s) {
  return {{"lattice", to_json(*s.lattice)}, {"algebra", algebra_to_json(s.algebra)}, {"vertices", cell_list(s.values)}};
}

VertexSection section_from_json(const json& j, LatticePtr lat, AlgebraPtr alg) {
  require_keys(j, {"lattice", "algebra", "vertices"}, "section");
  auto s = VertexSection::zero(lat, alg);
  s.values = cell_list_from(at(j, "vertices", "section"), alg->dim(), static_cast<Eigen::Index>(lat->num_vertices()),
                            "vertices");
  return s;
}

json to_json(const SampledDomain& d) {
  if (d.size() == 0) throw InputError("domain: empty");
  const auto& c0 = d.config(0);
  json gens = json::array();
  for (const auto& g : d.generators()) {
    bool constant = true;
    for (const auto& v : g.values) constant = constant && v == g.values.front();
    if (constant) {
      gens.push_back({{"constant", to_json(g.values.front())}});
    } else {
      json vals = json::array();
      for (const auto& v : g.values) vals.push_back(to_json(v));
      gens.push_back({{"values", vals}});
    }
  }
  json configs = json::array();
  for (const auto& c : d.configs()) {
    if (!(*c.links.lattice == *c0.links.lattice) || c.links.algebra->name() != c0.links.algebra->name())
      throw InputError("domain: configurations on different lattices or algebras cannot be written");
    json cj{{"links", link_list(c.links)}};
    if (c.phi) cj["phi"] = cell_list(c.phi->values);
    if (c.b) cj["b"] = cell_list(c.b->values);
    configs.push_back(cj);
  }
  return {{"lattice", to_json(*c0.links.lattice)},
          {"algebra", algebra_to_json(c0.links.algebra)},
          {"generators", gens},
          {"configs", configs},
          {"tags", d.tag_list()}};
}

SampledDomain domain_from_json(const json& j) {
  require_keys(j, {"lattice", "algebra", "generators", "configs", "tags"}, "domain");
  auto lat = lattice_from_json(at(j, "lattice", "domain"));
  auto alg = algebra_from_json(at(j, "algebra", "domain"));
  const auto l = static_cast<Eigen::Index>(alg->dim());
  std::vector<GaugeTransform> gens;
  for (const auto& g : at(j, "generators", "domain")) {
    require_keys(g, {"constant", "values"}, "generator");
    if (g.contains("constant")) {
      gens.push_back(GaugeTransform::constant(lat, alg, cmat_from_json(g.at("constant"))));
    } else {
      GaugeTransform t{lat, alg, {}};
      for (const auto& v : g.at("values")) t.values.push_back(cmat_from_json(v));
      if (t.values.size() != lat->num_vertices()) throw InputError("generator: need one value per vertex");
      gens.push_back(std::move(t));
    }
  }
  std::vector<Config> configs;
  for (const auto& cj : at(j, "configs", "domain")) {
    require_keys(cj, {"links", "phi", "b"}, "config");
    Config c{link_list_from(at(cj, "links", "config"), lat, alg), std::nullopt, std::nullopt};
    if (cj.contains("phi")) {
      auto s = VertexSection::zero(lat, alg);
      s.values = cell_list_from(cj.at("phi"), l, static_cast<Eigen::Index>(lat->num_vertices()), "phi");
      c.phi = std::move(s);
    }
    if (cj.contains("b")) {
      auto b = AlgebraCochain2::zero(lat, alg);
      b.values = cell_list_from(cj.at("b"), l, static_cast<Eigen::Index>(lat->num_plaquettes()), "b");
      c.b = std::move(b);
    }
    configs.push_back(std::move(c));
  }
  auto tags = get<std::vector<unsigned>>(j, "tags", "domain");
  if (tags.size() != configs.size()) throw InputError("domain: one tag per configuration");
  return SampledDomain::from_configs(std::move(configs), std::move(tags), std::move(gens));
}

json to_json(const ExtensionReport& r) {
  return {{"ok", r.ok},
          {"samples", r.samples},
          {"decomposition_residual", r.decomposition_residual},
          {"decomposition_scale", r.decomposition_scale},
          {"gauge_residual", r.gauge_residual},
          {"delta_residual", r.delta_residual},
          {"zero_in_correction", r.zero_in_correction},
          {"connections_contained", r.connections_contained},
          {"correction_closed", r.correction_closed},
          {"complete_consistent", r.complete_consistent},
          {"equivariant_consistent", r.equivariant_consistent},
          {"failures", r.failures}};
}

json to_json(const Extension& e, bool with_report) {
  json j{{"kind", e.kind},
         {"base", to_json(e.base)},
         {"embedding", e.embedding.name},
         {"domain", to_json(*e.domain)},
         {"correction", e.correction},
         {"s_hat", rationals(e.s_hat)},
         {"c", rationals(e.c)},
         {"base_on_delta", rationals(e.base_on_delta)},
         {"flags",
          {{"full", e.flags.full},
           {"complete", e.flags.complete},
           {"equivariant", e.flags.equivariant},
           {"linear", e.flags.linear}}}};
  if (e.delta) {
    json d = json::array();
    for (const auto& u : *e.delta) d.push_back(link_list(u));
    j["delta"] = d;
  }
  if (with_report) j["report"] = to_json(check_extension(e));
  return j;
}

Extension extension_from_json(const json& j) {
  require_keys(j, {"kind", "base", "embedding", "domain", "correction", "s_hat", "c", "base_on_delta", "flags",
                   "delta", "report"},
               "extension");
  Extension e;
  e.kind = get<std::string>(j, "kind", "extension");
  e.base = theory_from_json(at(j, "base", "extension"));
  e.embedding = embedding_from_name(get<std::string>(j, "embedding", "extension"));
  e.domain = std::make_shared<const SampledDomain>(domain_from_json(at(j, "domain", "extension")));
  e.correction = get<std::vector<std::size_t>>(j, "correction", "extension");
  for (auto i : e.correction)
    if (i >= e.domain->size()) throw InputError("extension: correction index out of range");
  e.s_hat = rationals_from(at(j, "s_hat", "extension"), "s_hat");
  e.c = rationals_from(at(j, "c", "extension"), "c");
  e.base_on_delta = rationals_from(at(j, "base_on_delta", "extension"), "base_on_delta");
  if (e.s_hat.size() != e.domain->size() || e.c.size() != e.correction.size() ||
      e.base_on_delta.size() != e.correction.size())
    throw InputError("extension: table sizes do not match the domain");
  const auto& f = at(j, "flags", "extension");
  require_keys(f, {"full", "complete", "equivariant", "linear"}, "flags");
  e.flags = {f.value("full", false), f.value("complete", false), f.value("equivariant", false),
             f.value("linear", false)};
  if (j.contains("delta")) {
    std::vector<LinkField> d;
    for (const auto& u : j.at("delta")) d.push_back(link_list_from(u, e.base.lattice, e.base.algebra));
    if (d.size() != e.correction.size()) throw InputError("extension: one delta value per correction point");
    e.delta = std::move(d);
  }
  return e;
}

json to_json(const ExtMorphism& m, const std::string& source_ref, const std::string& target_ref) {
  json f = json::array(), g = json::array();
  for (std::size_t i = 0; i < m.f.size(); ++i) f.push_back(json::array({i, m.f[i]}));
  for (std::size_t k = 0; k < m.g.size(); ++k) g.push_back(json::array({m.source->correction[k], m.target->correction[m.g[k]]}));
  return {{"source", source_ref}, {"target", target_ref}, {"f", f}, {"g", g}};
}

json to_json(const MorphismReport& r) {
  return {{"ok", r.ok},
          {"f_equivariant", r.f_equivariant},
          {"g_equivariant", r.g_equivariant},
          {"inclusion_commutes", r.inclusion_commutes},
          {"s_residual", r.s_residual},
          {"c_residual", r.c_residual},
          {"delta_residual", r.delta_residual},
          {"failures", r.failures}};
}

json to_json(const Classification& c) { return {{"mono", c.mono}, {"epi", c.epi}, {"iso", c.iso}}; }

json to_json(const ProbeReport& p) {
  return {{"value_slice", p.value_slice},     {"correction_slice", p.correction_slice},
          {"connection_slice", p.connection_slice}, {"f_bijective", p.f_bijective},
          {"g_bijective", p.g_bijective},     {"product_iso", p.product_iso},
          {"ext_iso", p.ext_iso},             {"counterexample", p.counterexample},
          {"located", p.located}};
}

json to_json(const TerminalReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"kind", x.kind},
                 {"morphism_count", x.morphism_count},
                 {"exists", x.exists},
                 {"unique", x.unique},
                 {"full_diagram", x.full_diagram},
                 {"obstruction", x.obstruction}});
  return {{"terminal", r.terminal}, {"witnesses", w}};
}

json to_json(const RankBound& b) {
  const char* kind = b.kind == BoundKind::general ? "general" : b.kind == BoundKind::q_connected ? "q_connected" : "equality";
  return {{"value", b.value.str()}, {"value_float", b.value.to_double()}, {"strict", b.strict}, {"kind", kind}};
}

std::string low_rank_csv(const std::vector<LowRankPoint>& pts) {
  std::ostringstream os;
  os << "n,l,rank_bound\n";
  for (const auto& p : pts) os << p.n << ',' << p.l << ',' << p.rank << '\n';
  return os.str();
}

json to_json(const ScalarPolynomial& p) {
  return {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"coefficients", p.coefficients()}};
}

json to_json(const RootSet& r) { return {{"all_reals", r.all_reals}, {"roots", r.roots}}; }

json to_json(const GaugeReport& r) {
  return {{"max_deviation", r.max_deviation}, {"reference", r.reference}, {"invariant", r.invariant}, {"trials", r.trials}};
}

json envelope(const std::string& command, std::uint64_t seed, const std::string& key, json payload) {
  return {{"tool", "ymt"}, {"version", version}, {"command", command}, {"seed", seed}, {key, std::move(payload)}};
}

std::string csv_header(const std::string& command, std::uint64_t seed) {
  std::ostringstream os;
  os << "# ymt " << version << "\n# command: " << command << "\n# seed: " << seed << '\n';
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

Extension read_extension(const std::string& path) {
  const auto j = read_json_file(path);
  if (j.is_object() && j.contains("extension")) return extension_from_json(j.at("extension"));
  return extension_from_json(j);
}

}  // namespace ymt::io
