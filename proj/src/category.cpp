#include "ymt/category.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "ymt/error.hpp"

namespace ymt {

namespace {

double rel_diff(const mpq_class& a, const mpq_class& b) {
  const mpq_class d = a - b;
  return std::abs(d.get_d()) / std::max(1.0, std::abs(b.get_d()));
}

double link_distance(const LinkField& a, const LinkField& b) {
  if (a.links.size() != b.links.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t e = 0; e < a.links.size(); ++e) d = std::max(d, (a.links[e] - b.links[e]).cwiseAbs().maxCoeff());
  return d;
}

bool injective(const std::vector<std::size_t>& m, std::size_t n) {
  std::vector<char> hit(n, 0);
  for (auto v : m) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool surjective(const std::vector<std::size_t>& m, std::size_t n) {
  std::vector<char> hit(n, 0);
  for (auto v : m) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// Propagates f(gen x) = gen f(x) from f(x0) = y over the orbit of x0.
bool propagate(const SampledDomain& src, const SampledDomain& tgt, std::size_t x0, std::size_t y,
               const std::vector<std::optional<std::size_t>>& forced, std::vector<std::size_t>& f) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> touched{x0};
  f[x0] = y;
  std::deque<std::size_t> q{x0};
  bool ok = true;
  while (!q.empty() && ok) {
    const auto x = q.front();
    q.pop_front();
    if (forced[x] && *forced[x] != f[x]) ok = false;
    for (std::size_t g = 0; g < src.generators().size() && ok; ++g) {
      const auto gx = src.act(g, x);
      const auto gy = tgt.act(g, f[x]);
      if (f[gx] == unset) {
        f[gx] = gy;
        touched.push_back(gx);
        q.push_back(gx);
      } else if (f[gx] != gy) {
        ok = false;
      }
    }
  }
  if (!ok)
    for (auto t : touched) f[t] = unset;
  return ok;
}

void require_compatible(const ExtMorphism& m) {
  if (!m.source || !m.target) throw InputError("morphism: missing source or target");
  if (!same_theory(m.source->base, m.target->base) || !same_embedding(m.source->embedding, m.target->embedding))
    throw InputError("morphism: source and target extend different theories or embeddings");
  if (m.f.size() != m.source->domain->size() || m.g.size() != m.source->correction.size())
    throw InputError("morphism: f and g must be defined on the whole source");
  for (auto v : m.f)
    if (v >= m.target->domain->size()) throw InputError("morphism: f leaves the target domain");
  for (auto v : m.g)
    if (v >= m.target->correction.size()) throw InputError("morphism: g leaves the target correction domain");
}

}  // namespace

MorphismReport check_morphism(const ExtMorphism& m, bool strict) {
  require_compatible(m);
  const auto& s = *m.source;
  const auto& t = *m.target;
  const auto& sd = *s.domain;
  const auto& td = *t.domain;
  MorphismReport r;
  auto fail = [&r](std::string msg) {
    r.ok = false;
    r.failures.push_back(std::move(msg));
  };

  if (!sd.same_generators(td)) {
    r.f_equivariant = false;
  } else {
    for (std::size_t g = 0; g < sd.generators().size() && r.f_equivariant; ++g)
      for (std::size_t x = 0; x < sd.size(); ++x)
        if (m.f[sd.act(g, x)] != td.act(g, m.f[x])) {
          r.f_equivariant = false;
          break;
        }
  }
  if (!r.f_equivariant) fail("f is not equivariant");

  for (std::size_t x = 0; x < sd.size(); ++x) r.s_residual = std::max(r.s_residual, rel_diff(t.s_hat[m.f[x]], s.s_hat[x]));
  if (r.s_residual > 1e-9) fail("S_hat triangle fails, residual " + std::to_string(r.s_residual));

  for (std::size_t k = 0; k < s.correction.size(); ++k) {
    const auto gk = m.g[k];
    if (m.f[s.correction[k]] != t.correction[gk]) r.inclusion_commutes = false;
    r.c_residual = std::max(r.c_residual, rel_diff(t.c[gk], s.c[k]));
    if (s.delta && t.delta)
      r.delta_residual = std::max(r.delta_residual, link_distance((*t.delta)[gk], (*s.delta)[k]));
    else
      r.delta_residual = std::max(r.delta_residual, rel_diff(t.base_on_delta[gk], s.base_on_delta[k]));
  }
  if (!r.inclusion_commutes) fail("f o j differs from j o g");
  if (r.c_residual > 1e-9) fail("correction triangle fails, residual " + std::to_string(r.c_residual));
  if (r.delta_residual > 1e-9) fail("delta triangle fails, residual " + std::to_string(r.delta_residual));

  if (strict) {
    if (!sd.is_closed(s.correction) || !td.is_closed(t.correction) || !sd.same_generators(td)) {
      r.g_equivariant = false;
    } else {
      for (std::size_t g = 0; g < sd.generators().size() && r.g_equivariant; ++g)
        for (std::size_t k = 0; k < s.correction.size(); ++k) {
          const auto lhs = m.g[*s.correction_position(sd.act(g, s.correction[k]))];
          const auto rhs = *t.correction_position(td.act(g, t.correction[m.g[k]]));
          if (lhs != rhs) {
            r.g_equivariant = false;
            break;
          }
        }
    }
    if (!r.g_equivariant) fail("strict mode: g is not equivariant");
  }
  return r;
}

ExtMorphism make_morphism(ExtensionPtr source, ExtensionPtr target, std::vector<std::size_t> f,
                          std::vector<std::size_t> g, bool strict) {
  ExtMorphism m{std::move(source), std::move(target), std::move(f), std::move(g)};
  const auto r = check_morphism(m, strict);
  if (!r.ok) {
    std::string msg = "morphism check failed";
    for (const auto& s : r.failures) msg += "; " + s;
    throw VerificationError(msg);
  }
  return m;
}

ExtMorphism identity_morphism(const ExtensionPtr& e) {
  std::vector<std::size_t> f(e->domain->size()), g(e->correction.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = i;
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = k;
  return make_morphism(e, e, std::move(f), std::move(g));
}

ExtMorphism compose(const ExtMorphism& m2, const ExtMorphism& m1) {
  if (m1.target != m2.source) throw InputError("compose: target of the first morphism is not the source of the second");
  std::vector<std::size_t> f(m1.f.size()), g(m1.g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = m2.f[m1.f[i]];
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = m2.g[m1.g[k]];
  return make_morphism(m1.source, m2.target, std::move(f), std::move(g));
}

Classification classify(const ExtMorphism& m) {
  require_compatible(m);
  Classification c;
  const auto nt = m.target->domain->size();
  const auto nc = m.target->correction.size();
  c.mono = injective(m.f, nt) && injective(m.g, nc);
  c.epi = surjective(m.f, nt) && surjective(m.g, nc);
  c.iso = c.mono && c.epi && inverse(m).has_value();
  return c;
}

std::optional<ExtMorphism> inverse(const ExtMorphism& m) {
  require_compatible(m);
  const auto nt = m.target->domain->size();
  const auto nc = m.target->correction.size();
  if (m.f.size() != nt || m.g.size() != nc) return std::nullopt;
  if (!injective(m.f, nt) || !injective(m.g, nc)) return std::nullopt;
  ExtMorphism inv{m.target, m.source, std::vector<std::size_t>(nt), std::vector<std::size_t>(nc)};
  for (std::size_t i = 0; i < m.f.size(); ++i) inv.f[m.f[i]] = i;
  for (std::size_t k = 0; k < m.g.size(); ++k) inv.g[m.g[k]] = k;
  if (!check_morphism(inv).ok) return std::nullopt;
  return inv;
}

BFIso bf_identity_iso(const YMTTheory& base, DomainPtr dom, std::uint64_t seed) {
  if (base.lattice->dim() != 4) throw InputError("bf_identity_iso: BF theory needs a 4-dimensional lattice");
  BFIso out;
  out.identity = std::make_shared<const Extension>(make_identity(base, dom, seed));
  out.bf = std::make_shared<const Extension>(make_bf(base, curvature_graph_domain(*out.identity->domain)));
  const auto& id_dom = *out.identity->domain;
  const auto& bf_dom = *out.bf->domain;
  std::vector<std::size_t> f(id_dom.size());
  for (std::size_t i = 0; i < id_dom.size(); ++i) {
    // Graph points are matched by their connection component.
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < bf_dom.size() && !hit; ++j)
      if (link_distance(bf_dom.config(j).links, id_dom.config(i).links) <= SampledDomain::match_tol) hit = j;
    if (!hit) throw VerificationError("bf_identity_iso: connection " + std::to_string(i) + " has no graph point");
    f[i] = *hit;
  }
  std::vector<std::size_t> g(out.identity->correction.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto pos = out.bf->correction_position(f[out.identity->correction[k]]);
    if (!pos) throw VerificationError("bf_identity_iso: graph point outside the BF correction domain");
    g[k] = *pos;
  }
  out.forward = make_morphism(out.identity, out.bf, std::move(f), std::move(g));
  const auto inv = inverse(out.forward);
  if (!inv) throw VerificationError("bf_identity_iso: projection to the connection is not an inverse");
  out.backward = *inv;
  return out;
}

std::size_t count_equivariant_maps(const SampledDomain& src, const SampledDomain& tgt,
                                   const std::vector<std::optional<std::size_t>>& forced) {
  if (!src.same_generators(tgt)) throw InputError("count_equivariant_maps: different generator lists");
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  const auto reps = src.orbit_representatives();
  std::vector<std::size_t> f(src.size(), unset);
  std::size_t total = 1;
  for (std::size_t x = 0; x < src.size(); ++x) {
    if (reps[x] != x) continue;
    std::size_t choices = 0;
    for (std::size_t y = 0; y < tgt.size(); ++y) {
      if (propagate(src, tgt, x, y, forced, f)) {
        ++choices;
        // reset the orbit for the next candidate
        for (std::size_t z = 0; z < src.size(); ++z)
          if (reps[z] == x) f[z] = unset;
      }
    }
    if (choices == 0) return 0;
    total = total > std::numeric_limits<std::size_t>::max() / choices ? std::numeric_limits<std::size_t>::max()
                                                                       : total * choices;
  }
  return total;
}

std::optional<std::vector<std::size_t>> random_equivariant_map(const SampledDomain& src, const SampledDomain& tgt,
                                                               const std::vector<std::optional<std::size_t>>& forced,
                                                               Rng& rng) {
  if (!src.same_generators(tgt)) throw InputError("random_equivariant_map: different generator lists");
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  const auto reps = src.orbit_representatives();
  std::vector<std::size_t> f(src.size(), unset);
  for (std::size_t x = 0; x < src.size(); ++x) {
    if (reps[x] != x) continue;
    std::vector<std::size_t> order(tgt.size());
    for (std::size_t y = 0; y < order.size(); ++y) order[y] = y;
    std::shuffle(order.begin(), order.end(), rng);
    bool placed = false;
    for (auto y : order)
      if (propagate(src, tgt, x, y, forced, f)) {
        placed = true;
        break;
      }
    if (!placed) return std::nullopt;
  }
  return f;
}

TerminalReport terminal_check(const std::vector<ExtensionPtr>& candidates, const ExtensionPtr& nullext) {
  TerminalReport rep;
  const auto& nd = *nullext->domain;
  const auto zero_pos = nullext->zero_position();
  const auto zero = nullext->correction[zero_pos];
  for (const auto& cand : candidates) {
    if (!same_theory(cand->base, nullext->base) || !same_embedding(cand->embedding, nullext->embedding))
      throw InputError("terminal_check: candidate '" + cand->kind + "' extends a different theory or embedding");
    TerminalWitness w;
    w.kind = cand->kind;
    const bool c_ok = std::all_of(nullext->c.begin(), nullext->c.end(), [](const mpq_class& v) { return v == 0; }) &&
                      std::all_of(cand->c.begin(), cand->c.end(), [](const mpq_class& v) { return v == 0; });
    if (!c_ok) {
      for (std::size_t k = 0; k < cand->c.size(); ++k)
        if (cand->c[k] != 0) {
          w.obstruction = "C_null o g = 0 but C(" + std::to_string(cand->correction[k]) + ") = " + format_rational(cand->c[k]);
          break;
        }
    } else {
      std::vector<std::optional<std::size_t>> forced(cand->domain->size());
      for (auto i : cand->correction) forced[i] = zero;
      w.morphism_count = count_equivariant_maps(*cand->domain, nd, forced);
      if (w.morphism_count == 0) w.obstruction = "no equivariant f sends the correction domain to zero";
      if (w.morphism_count > 1) w.obstruction = "f is not unique: " + std::to_string(w.morphism_count) + " equivariant choices";
    }
    w.exists = w.morphism_count > 0;
    w.unique = w.morphism_count == 1;
    if (w.exists) {
      ExtMorphism m{cand, nullext, std::vector<std::size_t>(cand->domain->size(), zero),
                    std::vector<std::size_t>(cand->correction.size(), zero_pos)};
      if (w.unique) w.full_diagram = check_morphism(m).ok;
    }
    rep.terminal = rep.terminal && w.unique;
    rep.witnesses.push_back(std::move(w));
  }
  return rep;
}

ProbeReport embedding_probe(const ExtMorphism& m) {
  const auto r = check_morphism(m);
  ProbeReport p;
  p.value_slice = r.s_residual <= 1e-9;
  p.correction_slice = r.c_residual <= 1e-9;
  p.connection_slice = r.delta_residual <= 1e-9;
  const auto nt = m.target->domain->size();
  const auto nc = m.target->correction.size();
  p.f_bijective = injective(m.f, nt) && surjective(m.f, nt);
  p.g_bijective = injective(m.g, nc) && surjective(m.g, nc);
  p.product_iso = p.value_slice && p.correction_slice && p.connection_slice && r.f_equivariant && p.f_bijective &&
                  p.g_bijective;
  p.ext_iso = r.ok && classify(m).iso;
  p.counterexample = p.product_iso && !p.ext_iso;
  const auto& s = *m.source;
  const auto& t = *m.target;
  if (!p.value_slice) {
    for (std::size_t x = 0; x < m.f.size() && p.located.empty(); ++x)
      if (rel_diff(t.s_hat[m.f[x]], s.s_hat[x]) > 1e-9) p.located = "S_hat slice at domain point " + std::to_string(x);
  } else if (!p.correction_slice) {
    for (std::size_t k = 0; k < m.g.size() && p.located.empty(); ++k)
      if (rel_diff(t.c[m.g[k]], s.c[k]) > 1e-9)
        p.located = "C slice at correction point " + std::to_string(s.correction[k]);
  } else if (!p.connection_slice) {
    p.located = "delta slice, residual " + std::to_string(r.delta_residual);
  }
  return p;
}

}  // namespace ymt
