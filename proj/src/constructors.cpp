#include "ymt/constructors.hpp"

#include <cmath>
#include <numbers>

#include "ymt/error.hpp"

namespace ymt {

namespace {

std::shared_ptr<const SampledDomain> require_domain(const DomainPtr& dom) {
  if (!dom || dom->size() == 0) throw InputError("constructor: empty extended domain");
  return dom;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

void require_links_only(const SampledDomain& dom, const char* what) {
  for (const auto& c : dom.configs())
    if (c.phi || c.b) throw InputError(std::string(what) + ": domain must hold bare connections");
}

void finish(Extension& e) {
  e.flags.complete = std::all_of(e.c.begin(), e.c.end(), [](const mpq_class& v) { return v == 0; });
  e.flags.linear = e.base.pairing.linear;
  e.flags.equivariant = check_extension(e).equivariant_consistent;
}

// Extension with delta = id on the given correction points and C = s_hat - S.
Extension identity_like(const YMTTheory& base, DomainPtr dom, std::string kind, const std::vector<std::size_t>& corr,
                        const std::function<double(std::size_t, double)>& s_hat_of) {
  Extension e;
  e.kind = std::move(kind);
  e.base = base;
  e.embedding = catalog::identity(base.algebra);
  e.domain = dom;
  e.correction = corr;
  std::vector<double> s(dom->size());
  for (std::size_t i = 0; i < dom->size(); ++i) s[i] = base_action(base, dom->config(i).links);
  for (std::size_t i = 0; i < dom->size(); ++i) e.s_hat.push_back(exact(s_hat_of(i, s[i])));
  std::vector<LinkField> delta;
  for (auto i : corr) {
    const mpq_class sg = exact(s[i]);
    e.base_on_delta.push_back(sg);
    e.c.push_back(e.s_hat[i] - sg);
    delta.push_back(dom->config(i).links);
  }
  e.delta = std::move(delta);
  return e;
}

CMat holonomy(const LinkField& u, std::size_t p) {
  const auto b = u.lattice->plaquette_boundary(p);
  return u.link(b[0]) * u.link(b[1]) * u.link(b[2]) * u.link(b[3]);
}

}  // namespace

void require_gauge_invariant(const YMTTheory& base, const SampledDomain& dom, std::uint64_t seed) {
  std::size_t probe = 0;
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (!dom.config(i).is_zero()) {
      probe = i;
      break;
    }
  const auto& u = dom.config(probe).links;
  auto rep = gauge_invariance_report(base, u, 8, seed);
  if (rep.invariant) rep = gauge_invariance_report(base, u, dom.generators());
  if (!rep.invariant)
    throw PreconditionError("base theory '" + base.label + "' is gauge-breaking (deviation " +
                            std::to_string(rep.max_deviation) + "); gauge invariance is required");
}

Extension make_null(const YMTTheory& base, const GroupEmbedding& emb, DomainPtr dom) {
  require_domain(dom);
  require_same(base.algebra, emb.source, "make_null");
  const auto zero = dom->zero_index();
  if (!zero) throw InputError("make_null: extended domain lacks the zero configuration");
  Extension e;
  e.kind = "null";
  e.base = base;
  e.embedding = emb;
  e.domain = dom;
  e.correction = {*zero};
  e.s_hat.assign(dom->size(), 0);
  e.c = {0};
  const auto d0 = LinkField::identity(base.lattice, base.algebra);
  e.base_on_delta = {exact(base_action(base, d0))};
  e.delta = std::vector<LinkField>{d0};
  finish(e);
  require_valid(e, "make_null");
  return e;
}

Extension make_identity(const YMTTheory& base, DomainPtr dom, std::uint64_t seed) {
  require_domain(dom);
  require_links_only(*dom, "make_identity");
  require_gauge_invariant(base, *dom, seed);
  auto tagged = std::make_shared<const SampledDomain>(dom->with_tags(std::vector<unsigned>(dom->size(), tag_connection)));
  auto e = identity_like(base, tagged, "identity", all_indices(dom->size()), [](std::size_t, double s) { return s; });
  e.flags.full = false;
  finish(e);
  require_valid(e, "make_identity");
  return e;
}

Extension make_constant(const YMTTheory& base, const GroupEmbedding& emb, DomainPtr dom, const mpq_class& c,
                        const LinkField& d0) {
  require_domain(dom);
  require_same(base.algebra, emb.source, "make_constant");
  require_same(d0.lattice, base.lattice, "make_constant");
  require_same(d0.algebra, base.algebra, "make_constant");
  if (d0.group_residual() > 1e-10) throw InputError("make_constant: D0 is not a group-valued field");
  const mpq_class s0 = exact(base_action(base, d0));
  Extension e;
  e.kind = "constant";
  e.base = base;
  e.embedding = emb;
  e.domain = dom;
  e.correction = all_indices(dom->size());
  e.s_hat.assign(dom->size(), s0 + c);
  e.c.assign(dom->size(), c);
  e.base_on_delta.assign(dom->size(), s0);
  e.delta = std::vector<LinkField>(dom->size(), d0);
  finish(e);
  require_valid(e, "make_constant");
  return e;
}

Extension make_retract(const YMTTheory& base, DomainPtr dom, const std::vector<std::size_t>& r, std::uint64_t seed) {
  require_domain(dom);
  if (r.size() != dom->size()) throw InputError("make_retract: r must be defined on the whole domain");
  const auto conns = dom->tagged(tag_connection);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] >= dom->size() || !dom->has_tag(r[i], tag_connection))
      throw InputError("make_retract: r(" + std::to_string(i) + ") is not a connection");
  }
  for (auto i : conns) {
    if (r[i] != i) throw InputError("make_retract: r is not a retract, r(" + std::to_string(i) + ") != " + std::to_string(i));
    if (dom->config(i).phi || dom->config(i).b) throw InputError("make_retract: connections must be bare link fields");
  }
  for (std::size_t g = 0; g < dom->generators().size(); ++g)
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[dom->act(g, i)] != dom->act(g, r[i]))
        throw InputError("make_retract: r is not equivariant at configuration " + std::to_string(i));
  require_gauge_invariant(base, *dom, seed);
  std::vector<double> s(dom->size());
  for (auto i : conns) s[i] = base_action(base, dom->config(i).links);
  auto e = identity_like(base, dom, "retract", conns, [&](std::size_t i, double) { return s[r[i]]; });
  finish(e);
  require_valid(e, "make_retract");
  return e;
}

Extension make_bf(const YMTTheory& base, DomainPtr dom) {
  require_domain(dom);
  if (base.lattice->dim() != 4) throw InputError("make_bf: BF theory needs a 4-dimensional lattice");
  Extension e;
  e.kind = "bf";
  e.base = base;
  e.embedding = catalog::identity(base.algebra);
  e.domain = dom;
  std::vector<LinkField> delta;
  for (std::size_t i = 0; i < dom->size(); ++i) {
    const auto& cfg = dom->config(i);
    if (!cfg.b) throw InputError("make_bf: configuration " + std::to_string(i) + " has no B field");
    const auto f = plaquette_curvature(cfg.links);
    e.s_hat.push_back(exact(integrated_pairing(base, f, *cfg.b)));
    if (!dom->has_tag(i, tag_correction)) continue;
    const double off = (f.values - cfg.b->values).cwiseAbs().maxCoeff();
    if (off > 1e-9)
      throw InputError("make_bf: correction point " + std::to_string(i) + " is off the curvature graph (|B - F| = " +
                       std::to_string(off) + ")");
    e.correction.push_back(i);
    e.c.push_back(0);
    e.base_on_delta.push_back(exact(integrated_pairing(base, f, f)));
    delta.push_back(cfg.links);
  }
  if (e.correction.empty()) throw InputError("make_bf: no graph points tagged for correction");
  e.delta = std::move(delta);
  finish(e);
  require_valid(e, "make_bf");
  return e;
}

Extension make_background(const YMTTheory& base, const VertexSection& s,
                          std::function<double(const LinkField&, const VertexSection&)> coupling, DomainPtr dom,
                          std::uint64_t seed) {
  require_domain(dom);
  require_links_only(*dom, "make_background");
  require_gauge_invariant(base, *dom, seed);
  std::vector<double> cs(dom->size());
  for (std::size_t i = 0; i < dom->size(); ++i) cs[i] = coupling(dom->config(i).links, s);
  for (std::size_t g = 0; g < dom->generators().size(); ++g)
    for (std::size_t i = 0; i < dom->size(); ++i) {
      const double d = std::abs(cs[dom->act(g, i)] - cs[i]);
      if (d > 1e-9 * std::max(1.0, std::abs(cs[i])))
        throw PreconditionError("make_background: coupling is not gauge invariant (deviation " + std::to_string(d) +
                                " at configuration " + std::to_string(i) + ")");
    }
  auto tagged = std::make_shared<const SampledDomain>(dom->with_tags(std::vector<unsigned>(dom->size(), tag_connection)));
  auto e = identity_like(base, tagged, "background", all_indices(dom->size()),
                         [&](std::size_t i, double sv) { return sv + cs[i]; });
  finish(e);
  require_valid(e, "make_background");
  return e;
}

Vec theta_star(double phi, double alpha) {
  Vec v(3);
  v << std::sin(phi) * std::sin(alpha), -std::cos(phi) * std::sin(alpha), std::cos(alpha);
  return v;
}

Mat theta_star_matrix(double phi, double alpha) {
  const Vec v = theta_star(phi, alpha);
  Mat m(3, 3);
  m << 0, -v(2), v(1), v(2), 0, -v(0), -v(1), v(0), 0;
  return m;
}

Mat euler_rotation(double phi, double alpha, double psi) {
  auto rz = [](double t) {
    Mat m(3, 3);
    m << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return m;
  };
  Mat rx(3, 3);
  rx << 1, 0, 0, 0, std::cos(alpha), -std::sin(alpha), 0, std::sin(alpha), std::cos(alpha);
  return rz(phi) * rx * rz(psi);
}

double coherence_residual(const ThetaMap& theta, int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), pol(0.0, std::numbers::pi);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double p = ang(rng), a = pol(rng), s = ang(rng);
    const Vec expect = euler_rotation(p, a, s).col(2);
    worst = std::max(worst, (theta(p, a) - expect).cwiseAbs().maxCoeff());
  }
  return worst;
}

double HiggsPotential::operator()(const VertexSection& phi) const {
  Vec dens(phi.values.cols());
  for (Eigen::Index x = 0; x < phi.values.cols(); ++x) {
    const double r = phi.values.col(x).squaredNorm() - vev * vev;
    dens(x) = lambda * r * r;
  }
  return phi.lattice->volume_weight() * kernels::ordered_sum(dens);
}

double higgs_correction(const LinkField& u, const VertexSection& phi, const HiggsPotential& v) {
  const auto grad = covariant_derivative(u, phi);
  Vec dens(grad.values.cols());
  for (Eigen::Index e = 0; e < grad.values.cols(); ++e) dens(e) = grad.values.col(e).squaredNorm();
  return u.lattice->volume_weight() * kernels::ordered_sum(dens) + v(phi);
}

Extension make_higgs(const YMTTheory& base_hat, DomainPtr dom, const HiggsPotential& v, const ThetaMap& theta,
                     std::uint64_t seed) {
  require_domain(dom);
  if (base_hat.algebra->name() != "so3") throw InputError("make_higgs: the Higgs construction is shipped for SO(3)");
  const double coh = coherence_residual(theta, 64, seed);
  if (coh > 1e-10)
    throw PreconditionError("make_higgs: theta is not coherent, |theta - R e_z| = " + std::to_string(coh));
  for (std::size_t i = 0; i < dom->size(); ++i) {
    const auto& cfg = dom->config(i);
    if (!cfg.phi) continue;
    for (Eigen::Index x = 0; x < cfg.phi->values.cols(); ++x)
      if (std::abs(cfg.phi->values.col(x).norm() - 1.0) > 1e-10)
        throw InputError("make_higgs: configuration " + std::to_string(i) + " carries a field outside the Theta image");
  }
  Extension e;
  e.kind = "higgs";
  e.base = base_hat;
  e.embedding = catalog::identity(base_hat.algebra);
  e.domain = dom;
  std::vector<LinkField> delta;
  for (std::size_t i = 0; i < dom->size(); ++i) {
    const auto& cfg = dom->config(i);
    const mpq_class s = exact(base_action(base_hat, cfg.links));
    const mpq_class c = cfg.phi ? exact(higgs_correction(cfg.links, *cfg.phi, v)) : mpq_class(0);
    e.s_hat.push_back(s + c);
    e.correction.push_back(i);
    e.c.push_back(c);
    e.base_on_delta.push_back(s);
    delta.push_back(cfg.links);
  }
  e.delta = std::move(delta);
  e.flags.full = false;
  finish(e);
  require_valid(e, "make_higgs");
  return e;
}

YMTTheory lift_theory(const YMTTheory& base, const GroupEmbedding& emb) {
  require_same(base.algebra, emb.source, "lift_theory");
  if (!base.pairing.linear) throw InputError("lift_theory: needs a tensorial pairing");
  const Mat k = killing_form(emb.target).matrix;
  const Mat pulled = emb.algebra_map.transpose() * k * emb.algebra_map;
  std::vector<Mat> forms;
  for (const auto& f : base.pairing.algebra_forms) {
    // f = s * pulled for a scalar s, found by least squares and then verified.
    const double s = (pulled.array() * f.array()).sum() / pulled.squaredNorm();
    if ((f - s * pulled).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, f.cwiseAbs().maxCoeff()))
      throw PreconditionError("lift_theory: base form is not a multiple of the pulled-back Killing form");
    forms.push_back(s * k);
  }
  auto p = base.pairing;
  p.algebra = emb.target;
  p.algebra_forms = std::move(forms);
  return YMTTheory::make(std::move(p), base.label + "^lift");
}

LinkField reduce_to_subgroup(const LinkField& u, const GroupEmbedding& emb, const LatticePtr& base_lattice) {
  require_same(u.algebra, emb.target, "reduce_to_subgroup");
  const Mat k = killing_form(emb.target).matrix;
  const Mat& di = emb.algebra_map;
  const Mat gram = di.transpose() * k * di;
  const auto solver = gram.fullPivLu();
  LinkField out{base_lattice, emb.source, {}};
  out.links.reserve(u.links.size());
  for (const auto& m : u.links) {
    const Vec x = emb.target->from_matrix(logm_unitary(m));
    const Vec c = solver.solve(di.transpose() * k * x);
    out.links.push_back(expm(emb.source->to_matrix(c)));
  }
  return out;
}

double parallel_residual(const LinkField& u, const Vec& phi0) {
  auto s = VertexSection::zero(u.lattice, u.algebra);
  s.values.colwise() = phi0;
  return covariant_derivative(u, s).values.cwiseAbs().maxCoeff();
}

LinkFunctional wilson_functional(double mu) {
  return [mu](const LinkField& u) {
    const auto& lat = *u.lattice;
    const double d = u.algebra->rep_size();
    Vec dens(static_cast<Eigen::Index>(lat.num_plaquettes()));
    for (std::size_t p = 0; p < lat.num_plaquettes(); ++p)
      dens(static_cast<Eigen::Index>(p)) = d - holonomy(u, p).trace().real();
    return mu * lat.volume_weight() * kernels::ordered_sum(dens);
  };
}

Extension make_higgs_vacuum(const YMTTheory& base, const GroupEmbedding& emb, const Vec& phi0,
                            const LinkFunctional& correction, DomainPtr dom) {
  require_domain(dom);
  emb.validate();
  require_same(base.algebra, emb.source, "make_higgs_vacuum");
  if (phi0.size() != emb.target->dim()) throw InputError("make_higgs_vacuum: phi0 has the wrong dimension");
  const auto lifted = lift_theory(base, emb);
  Extension e;
  e.kind = "higgs-vacuum";
  e.base = base;
  e.embedding = emb;
  e.domain = dom;
  std::vector<double> cs(dom->size());
  for (std::size_t i = 0; i < dom->size(); ++i) cs[i] = correction(dom->config(i).links);
  for (std::size_t g = 0; g < dom->generators().size(); ++g)
    for (std::size_t i = 0; i < dom->size(); ++i)
      if (std::abs(cs[dom->act(g, i)] - cs[i]) > 1e-9 * std::max(1.0, std::abs(cs[i])))
        throw PreconditionError("make_higgs_vacuum: correction functional is not gauge invariant");
  std::vector<LinkField> delta;
  for (std::size_t i = 0; i < dom->size(); ++i) {
    const auto& u = dom->config(i).links;
    e.s_hat.push_back(exact(base_action(lifted, u) + cs[i]));
    if (parallel_residual(u, phi0) > 1e-9) continue;
    auto reduced = reduce_to_subgroup(u, emb, base.lattice);
    e.correction.push_back(i);
    e.c.push_back(exact(cs[i]));
    e.base_on_delta.push_back(exact(base_action(base, reduced)));
    delta.push_back(std::move(reduced));
  }
  if (e.correction.empty())
    throw PreconditionError("make_higgs_vacuum: no sampled connection keeps phi0 parallel; the vacuum need not exist");
  e.delta = std::move(delta);
  finish(e);
  require_valid(e, "make_higgs_vacuum");
  return e;
}

Extension emergence_to_extension(const ParameterizedTheory& s1, const ParameterizedTheory& s2,
                                 const std::map<std::string, std::string>& fmap,
                                 const std::function<LinkField(const LinkField&)>& gmap, DomainPtr dom,
                                 const std::string& epsilon) {
  require_domain(dom);
  require_links_only(*dom, "emergence_to_extension");
  if (!s2.has_parameter(epsilon)) throw InputError("emergence_to_extension: '" + epsilon + "' is not a parameter of S2");
  std::vector<LinkField> images;
  images.reserve(dom->size());
  for (const auto& cfg : dom->configs()) images.push_back(gmap(cfg.links));
  double worst = 0.0;
  std::string where;
  for (const auto& eps : s2.parameters) {
    const auto it = fmap.find(eps);
    if (it == fmap.end()) throw InputError("emergence_to_extension: parameter map undefined at '" + eps + "'");
    for (std::size_t i = 0; i < dom->size(); ++i) {
      const double a = s2(eps, dom->config(i).links);
      const double b = s1(it->second, images[i]);
      const double d = std::abs(a - b) / std::max(1.0, std::abs(a));
      if (d > worst) {
        worst = d;
        where = "sample " + std::to_string(i) + ", parameter '" + eps + "'";
      }
    }
  }
  if (worst > 1e-9)
    throw PreconditionError("emergence_to_extension: emergence identity fails at " + where + " (relative deviation " +
                            std::to_string(worst) + ")");
  Extension e;
  e.kind = "emergence";
  e.base = s1.base;
  e.embedding = catalog::identity(s1.base.algebra);
  e.domain = std::make_shared<const SampledDomain>(dom->with_tags(std::vector<unsigned>(dom->size(), tag_connection)));
  e.correction = all_indices(dom->size());
  for (std::size_t i = 0; i < dom->size(); ++i) {
    e.s_hat.push_back(exact(s2(epsilon, dom->config(i).links)));
    e.c.push_back(0);
    e.base_on_delta.push_back(exact(base_action(s1.base, images[i])));
  }
  e.delta = std::move(images);
  finish(e);
  require_valid(e, "emergence_to_extension");
  return e;
}

DomainPtr connection_domain(LatticePtr lat, AlgebraPtr alg, int count, double amplitude, Rng& rng,
                            std::vector<GaugeTransform> gens) {
  if (gens.empty()) gens = generators::standard(lat, alg);
  std::vector<Config> seeds{{LinkField::identity(lat, alg), {}, {}}};
  for (int k = 0; k < count; ++k) seeds.push_back({random_links(lat, alg, rng, amplitude), {}, {}});
  return std::make_shared<const SampledDomain>(
      SampledDomain::closure(seeds, std::vector<unsigned>(seeds.size(), tag_connection), std::move(gens)));
}

DomainPtr curvature_graph_domain(const SampledDomain& connections, bool off_graph) {
  std::vector<Config> seeds;
  std::vector<unsigned> tags;
  const auto reps = connections.orbit_representatives();
  for (std::size_t i = 0; i < connections.size(); ++i) {
    if (reps[i] != i) continue;
    const auto& u = connections.config(i).links;
    seeds.push_back({u, {}, plaquette_curvature(u)});
    tags.push_back(tag_connection | tag_correction);
    if (off_graph && !connections.config(i).is_zero()) {
      seeds.push_back({u, {}, AlgebraCochain2::zero(u.lattice, u.algebra)});
      tags.push_back(tag_extended);
    }
  }
  return std::make_shared<const SampledDomain>(SampledDomain::closure(seeds, tags, connections.generators()));
}

DomainPtr product_domain(const SampledDomain& connections, int sections, double amplitude, Rng& rng) {
  std::vector<Config> seeds;
  std::vector<unsigned> tags;
  const auto reps = connections.orbit_representatives();
  for (std::size_t i = 0; i < connections.size(); ++i) {
    if (reps[i] != i) continue;
    const auto& u = connections.config(i).links;
    seeds.push_back({u, {}, {}});
    tags.push_back(tag_connection);
    for (int s = 0; s < sections; ++s) {
      seeds.push_back({u, random_section(u.lattice, u.algebra, rng, amplitude), {}});
      tags.push_back(tag_extended);
    }
  }
  return std::make_shared<const SampledDomain>(SampledDomain::closure(seeds, tags, connections.generators()));
}

std::vector<std::size_t> projection_retract(const SampledDomain& dom) {
  std::vector<std::size_t> r(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const auto j = dom.find({dom.config(i).links, {}, {}});
    if (!j) throw InputError("projection_retract: connection part of configuration " + std::to_string(i) + " is missing");
    r[i] = *j;
  }
  return r;
}

DomainPtr higgs_domain(LatticePtr lat, int count, double amplitude, Rng& rng, const ThetaMap& theta) {
  const auto so3 = catalog::so3();
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), pol(0.0, std::numbers::pi);
  std::vector<Config> seeds{{LinkField::identity(lat, so3), {}, {}}};
  std::vector<unsigned> tags{tag_connection};
  for (int k = 0; k < count; ++k) {
    auto u = random_links(lat, so3, rng, amplitude);
    auto phi = VertexSection::zero(lat, so3);
    for (Eigen::Index x = 0; x < phi.values.cols(); ++x) {
      const double p = ang(rng), a = pol(rng);
      phi.values.col(x) = theta(p, a);
    }
    seeds.push_back({u, {}, {}});
    tags.push_back(tag_connection);
    seeds.push_back({u, phi, {}});
    tags.push_back(tag_correction);
  }
  return std::make_shared<const SampledDomain>(SampledDomain::closure(seeds, tags, generators::cube(lat, so3)));
}

DomainPtr higgs_vacuum_domain(LatticePtr lat, int parallel, int generic, double amplitude, Rng& rng) {
  const auto so3 = catalog::so3();
  std::vector<Config> seeds{{LinkField::identity(lat, so3), {}, {}}};
  std::normal_distribution<double> n(0.0, amplitude);
  for (int k = 0; k < parallel; ++k) {
    auto d = AlgebraCochain1::zero(lat, so3);
    for (Eigen::Index e = 0; e < d.values.cols(); ++e) d.values(2, e) = n(rng);
    seeds.push_back({exp_links(d), {}, {}});
  }
  for (int k = 0; k < generic; ++k) seeds.push_back({random_links(lat, so3, rng, amplitude), {}, {}});
  return std::make_shared<const SampledDomain>(SampledDomain::closure(
      seeds, std::vector<unsigned>(seeds.size(), tag_connection), generators::so2_normalizer(lat, so3)));
}

}  // namespace ymt
