#include "ymt/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ymt/error.hpp"

namespace ymt {

mpq_class exact(double v) {
  if (!std::isfinite(v)) throw VerificationError("non-finite functional value");
  return mpq_class(v);
}

double base_action(const YMTTheory& t, const LinkField& u) { return ymt_action(t, u); }

std::optional<std::size_t> Extension::correction_position(std::size_t config) const {
  const auto it = std::lower_bound(correction.begin(), correction.end(), config);
  if (it == correction.end() || *it != config) return std::nullopt;
  return static_cast<std::size_t>(it - correction.begin());
}

std::size_t Extension::zero_position() const {
  for (std::size_t k = 0; k < correction.size(); ++k)
    if (domain->config(correction[k]).is_zero()) return k;
  throw InputError("extension: zero configuration missing from the correction domain");
}

bool same_theory(const YMTTheory& a, const YMTTheory& b) {
  if (a.label != b.label || !(*a.lattice == *b.lattice) || a.algebra->name() != b.algebra->name()) return false;
  const auto& p = a.pairing;
  const auto& q = b.pairing;
  if (p.linear != q.linear || p.kind != q.kind) return false;
  if (!p.linear) return true;  // custom functionals are compared by label only
  if (p.form2 != q.form2 || p.algebra_forms.size() != q.algebra_forms.size()) return false;
  for (std::size_t i = 0; i < p.algebra_forms.size(); ++i)
    if (p.algebra_forms[i] != q.algebra_forms[i]) return false;
  return true;
}

bool same_embedding(const GroupEmbedding& a, const GroupEmbedding& b) {
  return a.name == b.name && a.source->name() == b.source->name() && a.target->name() == b.target->name() &&
         a.algebra_map == b.algebra_map;
}

namespace {

void check_shapes(const Extension& e) {
  if (!e.domain) throw InputError("extension: missing extended domain");
  if (e.s_hat.size() != e.domain->size()) throw InputError("extension: one S_hat value per configuration");
  if (e.correction.empty()) throw InputError("extension: correction domain is empty");
  if (e.c.size() != e.correction.size() || e.base_on_delta.size() != e.correction.size())
    throw InputError("extension: one correction and composite value per correction point");
  if (e.delta && e.delta->size() != e.correction.size()) throw InputError("extension: one delta value per correction point");
  for (std::size_t k = 0; k < e.correction.size(); ++k) {
    if (e.correction[k] >= e.domain->size()) throw InputError("extension: correction index out of range");
    if (k > 0 && e.correction[k] <= e.correction[k - 1])
      throw InputError("extension: correction indices must be strictly ascending");
  }
}

double rel(const mpq_class& diff, const mpq_class& ref) {
  return std::abs(diff.get_d()) / std::max(1.0, std::abs(ref.get_d()));
}

}  // namespace

ExtensionReport check_extension(const Extension& e) {
  check_shapes(e);
  ExtensionReport r;
  const auto& dom = *e.domain;
  r.samples = dom.size();
  auto fail = [&r](std::string msg) {
    r.ok = false;
    r.failures.push_back(std::move(msg));
  };

  double worst_rel = 0.0;
  for (std::size_t k = 0; k < e.correction.size(); ++k) {
    const mpq_class& s = e.s_hat[e.correction[k]];
    const mpq_class diff = s - e.base_on_delta[k] - e.c[k];
    r.decomposition_residual = std::max(r.decomposition_residual, std::abs(diff.get_d()));
    r.decomposition_scale = std::max(r.decomposition_scale, std::abs(s.get_d()));
    worst_rel = std::max(worst_rel, rel(diff, s));
  }
  if (worst_rel > 1e-9) fail("decomposition residual " + std::to_string(r.decomposition_residual));

  double worst_gauge = 0.0;
  for (std::size_t g = 0; g < dom.generators().size(); ++g)
    for (std::size_t i = 0; i < dom.size(); ++i) {
      const mpq_class diff = e.s_hat[dom.act(g, i)] - e.s_hat[i];
      r.gauge_residual = std::max(r.gauge_residual, std::abs(diff.get_d()));
      worst_gauge = std::max(worst_gauge, rel(diff, e.s_hat[i]));
    }
  if (worst_gauge > 1e-9) fail("extended functional is not gauge invariant, residual " + std::to_string(r.gauge_residual));

  if (e.delta) {
    double worst = 0.0;
    for (std::size_t k = 0; k < e.correction.size(); ++k) {
      const mpq_class diff = exact(base_action(e.base, (*e.delta)[k])) - e.base_on_delta[k];
      r.delta_residual = std::max(r.delta_residual, std::abs(diff.get_d()));
      worst = std::max(worst, rel(diff, e.base_on_delta[k]));
    }
    if (worst > 1e-9) fail("stored S(delta) disagrees with the delta map, residual " + std::to_string(r.delta_residual));
  }

  r.zero_in_correction = std::any_of(e.correction.begin(), e.correction.end(),
                                     [&](std::size_t i) { return dom.config(i).is_zero(); });
  if (!r.zero_in_correction) fail("zero configuration is not in the correction domain");

  const auto conns = dom.tagged(tag_connection);
  r.connections_contained = !conns.empty() && dom.is_closed(conns);
  if (!r.connections_contained) fail("connection-tagged set is empty or not generator-closed");

  const bool c_zero = std::all_of(e.c.begin(), e.c.end(), [](const mpq_class& v) { return v == 0; });
  r.complete_consistent = e.flags.complete == c_zero;
  if (!r.complete_consistent) fail(e.flags.complete ? "flagged complete but C is not identically zero"
                                                    : "C is identically zero but the complete flag is unset");

  r.correction_closed = dom.is_closed(e.correction);
  r.equivariant_consistent = r.correction_closed;
  if (r.correction_closed) {
    for (std::size_t g = 0; g < dom.generators().size() && r.equivariant_consistent; ++g)
      for (std::size_t k = 0; k < e.correction.size(); ++k) {
        const auto m = *e.correction_position(dom.act(g, e.correction[k]));
        if (rel(e.c[m] - e.c[k], e.c[k]) > 1e-9 || rel(e.base_on_delta[m] - e.base_on_delta[k], e.base_on_delta[k]) > 1e-9) {
          r.equivariant_consistent = false;
          break;
        }
      }
  }
  if (e.flags.equivariant && !r.equivariant_consistent)
    fail("flagged equivariant but the correction data is not generator-invariant");
  return r;
}

void require_valid(const Extension& e, const char* what) {
  const auto r = check_extension(e);
  if (r.ok) return;
  std::ostringstream os;
  os << what << ": extension check failed";
  for (const auto& f : r.failures) os << "; " << f;
  throw VerificationError(os.str());
}

namespace {

bool all_zero(const std::vector<mpq_class>& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
}

void refresh_flags(Extension& e) { e.flags.complete = all_zero(e.c); }

// Index of each e1 configuration inside e2's domain, when present.
std::vector<std::optional<std::size_t>> match(const SampledDomain& d1, const SampledDomain& d2, bool same_object) {
  std::vector<std::optional<std::size_t>> m(d1.size());
  for (std::size_t i = 0; i < d1.size(); ++i) m[i] = same_object ? std::optional<std::size_t>(i) : d2.find(d1.config(i));
  return m;
}

}  // namespace

Extension sum(const Extension& e1, const Extension& e2) {
  if (!same_theory(e1.base, e2.base)) throw InputError("sum: extensions of different base theories");
  if (!same_embedding(e1.embedding, e2.embedding)) throw InputError("sum: extensions along different embeddings");
  const auto& d1 = *e1.domain;
  const auto& d2 = *e2.domain;
  if (!d1.same_generators(d2)) throw InputError("sum: extended domains carry different gauge generators");
  const bool same = e1.domain == e2.domain;
  const auto m12 = match(d1, d2, same);

  std::vector<std::size_t> idx1;
  for (std::size_t i = 0; i < d1.size(); ++i)
    if (m12[i]) idx1.push_back(i);
  for (auto i : d1.tagged(tag_connection))
    if (!m12[i]) throw InputError("sum: incompatible domains, connection " + std::to_string(i) + " of the first extension is missing from the second");
  if (!same) {
    const auto m21 = match(d2, d1, false);
    for (auto j : d2.tagged(tag_connection))
      if (!m21[j]) throw InputError("sum: incompatible domains, connection " + std::to_string(j) + " of the second extension is missing from the first");
  }
  if (!d1.is_closed(idx1)) throw InputError("sum: intersection of extended domains is not generator-closed");

  Extension out;
  out.kind = "sum";
  out.base = e1.base;
  out.embedding = e1.embedding;
  auto dom = same ? d1 : d1.subset(idx1);
  if (!same) {
    auto tags = dom.tag_list();
    for (std::size_t k = 0; k < idx1.size(); ++k) tags[k] |= d2.tags(*m12[idx1[k]]);
    dom = dom.with_tags(std::move(tags));
  }
  out.domain = std::make_shared<const SampledDomain>(std::move(dom));

  std::vector<std::size_t> keep1, keep2;
  for (std::size_t k = 0; k < idx1.size(); ++k) {
    const auto i = idx1[k];
    const auto j = *m12[i];
    out.s_hat.push_back(e1.s_hat[i] + e2.s_hat[j]);
    const auto p1 = e1.correction_position(i);
    const auto p2 = e2.correction_position(j);
    if (p1 && p2) {
      out.correction.push_back(k);
      out.c.push_back(e1.c[*p1] + e2.c[*p2]);
      out.base_on_delta.push_back(e1.base_on_delta[*p1] + e2.base_on_delta[*p2]);
      keep1.push_back(*p1);
      keep2.push_back(*p2);
    }
  }
  if (out.correction.empty()) throw InputError("sum: correction domains do not intersect");

  // S(delta1) + S(delta2) is kept as a composite; a delta map survives only
  // when the other summand contributes nothing to it.
  auto part = [](const std::vector<mpq_class>& v, const std::vector<std::size_t>& pos) {
    std::vector<mpq_class> r;
    for (auto p : pos) r.push_back(v[p]);
    return r;
  };
  auto restrict_delta = [](const Extension& e, const std::vector<std::size_t>& pos) {
    std::vector<LinkField> r;
    for (auto p : pos) r.push_back((*e.delta)[p]);
    return r;
  };
  if (e1.delta && all_zero(part(e2.base_on_delta, keep2)))
    out.delta = restrict_delta(e1, keep1);
  else if (e2.delta && all_zero(part(e1.base_on_delta, keep1)))
    out.delta = restrict_delta(e2, keep2);

  out.flags.full = e1.flags.full && e2.flags.full;
  out.flags.linear = e1.flags.linear && e2.flags.linear;
  out.flags.equivariant = e1.flags.equivariant && e2.flags.equivariant;
  refresh_flags(out);
  require_valid(out, "sum");
  return out;
}

namespace {

void require_additive(const GroupAction& a, const Extension& e, const char* what) {
  std::vector<mpq_class> samples{1, -1, mpq_class(1, 2)};
  for (const auto& v : e.s_hat) samples.push_back(v);
  for (const auto& v : e.c) samples.push_back(v);
  for (const auto& v : e.base_on_delta) samples.push_back(v);
  if (!a.is_additive(samples))
    throw PreconditionError(std::string(what) + ": action '" + a.name + "' is not additive on the sampled values");
}

void keep_delta_if_unchanged(Extension& out, const Extension& e) {
  if (e.delta && out.base_on_delta == e.base_on_delta)
    out.delta = e.delta;
  else
    out.delta.reset();
}

}  // namespace

Extension act(const GroupAction& a, int g, const Extension& e) {
  if (g < 0 || g >= a.order) throw InputError("act: group element out of range");
  require_additive(a, e, "act");
  if (g == 0) return e;
  Extension out = e;
  out.kind = "act";
  for (std::size_t k = 0; k < e.correction.size(); ++k) {
    const auto i = e.correction[k];
    out.s_hat[i] = a.apply(g, e.s_hat[i]);
    out.c[k] = a.apply(g, e.c[k]);
    out.base_on_delta[k] = a.apply(g, e.base_on_delta[k]);
  }
  keep_delta_if_unchanged(out, e);
  refresh_flags(out);
  const auto r = check_extension(out);
  if (!r.ok) {
    std::string msg = "act: acted functional fails the extension check";
    for (const auto& f : r.failures) msg += "; " + f;
    throw PreconditionError(msg);
  }
  return out;
}

Extension scale(const mpq_class& q, const Extension& e) {
  Extension out = e;
  if (q == 1) return out;
  out.kind = "scaled";
  for (auto& v : out.s_hat) v *= q;
  for (auto& v : out.c) v *= q;
  for (auto& v : out.base_on_delta) v *= q;
  keep_delta_if_unchanged(out, e);
  refresh_flags(out);
  return out;
}

Extension module_scalar(const GroupRingElement& x, const GroupAction& a, const Extension& e) {
  if (x.order() != a.order) throw InputError("module_scalar: group ring and action use different groups");
  require_additive(a, e, "module_scalar");
  if (x.coefficients().empty()) return scale(0, e);
  std::optional<Extension> acc;
  for (const auto& [g, q] : x.coefficients()) {
    auto term = scale(q, act(a, g, e));
    acc = acc ? sum(*acc, term) : std::move(term);
  }
  acc->kind = "module";
  return *acc;
}

Extension restrict(const Extension& e, const std::vector<std::size_t>& sub) {
  const auto& dom = *e.domain;
  auto small = dom.subset(sub);
  if (!small.zero_index()) throw InputError("restrict: subdomain must contain the zero configuration");
  Extension out;
  out.kind = e.kind;
  out.base = e.base;
  out.embedding = e.embedding;
  out.flags = e.flags;
  std::vector<LinkField> delta;
  for (std::size_t k = 0; k < sub.size(); ++k) {
    out.s_hat.push_back(e.s_hat[sub[k]]);
    if (const auto p = e.correction_position(sub[k])) {
      out.correction.push_back(k);
      out.c.push_back(e.c[*p]);
      out.base_on_delta.push_back(e.base_on_delta[*p]);
      if (e.delta) delta.push_back((*e.delta)[*p]);
    }
  }
  if (e.delta) out.delta = std::move(delta);
  out.domain = std::make_shared<const SampledDomain>(std::move(small));
  refresh_flags(out);
  out.flags.full = e.flags.full && sub.size() == dom.size();
  require_valid(out, "restrict");
  return out;
}

}  // namespace ymt
