#include "ymt/pairing_space.hpp"

#include <numeric>

#include "ymt/error.hpp"

namespace ymt {

Fraction Fraction::make(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InputError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const auto g = std::gcd(n < 0 ? -n : n, d);
  return g > 1 ? Fraction{n / g, d / g} : Fraction{n, d};
}

std::string Fraction::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Fraction operator+(Fraction a, Fraction b) { return Fraction::make(a.num * b.den + b.num * a.den, a.den * b.den); }

bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }

std::int64_t fiber_rank(int n, int l) {
  if (n < 0 || l < 0) throw InputError("fiber_rank: n and l must be non-negative");
  const std::int64_t planes = static_cast<std::int64_t>(n) * (n - 1) / 2;
  return planes * planes * l * l;
}

std::int64_t trivial_bundle_rank(int n, int l) { return fiber_rank(n, l) + 1; }

RankBound rank_upper_bound(const RankQuery& q) {
  if (q.n < 0 || q.l < 0) throw InputError("rank_upper_bound: n and l must be non-negative");
  if (q.contractible && q.parallelizable_abelian)
    throw InputError("rank_upper_bound: at most one equality flag may be set");
  const bool equality = q.contractible || q.parallelizable_abelian;
  if (q.q && equality) throw InputError("rank_upper_bound: no combined bound for q-connected and equality cases");
  if (q.n < 2 || q.l < 1) return {Fraction{0, 1}, false, BoundKind::general};

  const Fraction fiber{fiber_rank(q.n, q.l), 1};
  if (equality) return {fiber + Fraction{1, 1}, false, BoundKind::equality};
  if (q.q) {
    if (*q.q < 1) throw InputError("rank_upper_bound: q must be at least 1");
    return {fiber + Fraction::make(q.n + 1, *q.q + 1) + Fraction{1, 1}, true, BoundKind::q_connected};
  }
  return {fiber + Fraction{q.n + 1, 1}, false, BoundKind::general};
}

std::vector<LowRankPoint> enumerate_low_rank(std::int64_t z, int n_max, int l_max) {
  if (z < 1) throw InputError("enumerate_low_rank: z must be at least 1");
  std::vector<LowRankPoint> out;
  for (int n = 2; n <= n_max; ++n)
    for (int l = 1; l <= l_max; ++l) {
      const auto r = trivial_bundle_rank(n, l);
      if (r <= z) out.push_back({n, l, r});
    }
  return out;
}

PairingSpec PairingSpec::tensorial(LatticePtr lat, AlgebraPtr alg, const Mat& algebra_form) {
  if (algebra_form.rows() != alg->dim() || algebra_form.cols() != alg->dim())
    throw InputError("pairing: algebra form must be l x l");
  const int planes = lat->num_planes();
  return {std::move(lat), std::move(alg), Mat::Identity(planes, planes), {algebra_form}, true, {}, "matrix"};
}

PairingSpec PairingSpec::killing(LatticePtr lat, AlgebraPtr alg) {
  auto p = tensorial(std::move(lat), alg, killing_form(alg).matrix);
  p.kind = "killing";
  return p;
}

PairingSpec PairingSpec::position_dependent(LatticePtr lat, AlgebraPtr alg, std::vector<Mat> forms) {
  if (forms.size() != lat->num_vertices()) throw InputError("pairing: need one algebra form per vertex");
  for (const auto& f : forms)
    if (f.rows() != alg->dim() || f.cols() != alg->dim()) throw InputError("pairing: algebra form must be l x l");
  const int planes = lat->num_planes();
  return {std::move(lat), std::move(alg), Mat::Identity(planes, planes), std::move(forms), true, {}, "matrix"};
}

PairingSpec PairingSpec::custom(LatticePtr lat, AlgebraPtr alg,
                                std::function<double(const AlgebraCochain2&, const AlgebraCochain2&)> f) {
  return {std::move(lat), std::move(alg), Mat(), {}, false, std::move(f), "custom"};
}

const Mat& PairingSpec::form_at(std::size_t vertex) const {
  if (!linear) throw InputError("pairing: non-tensorial pairing has no pointwise form");
  return algebra_forms.size() == 1 ? algebra_forms.front() : algebra_forms.at(vertex);
}

void PairingSpec::validate() const {
  if (!lattice || !algebra) throw InputError("pairing: missing lattice or algebra");
  if (!linear) {
    if (!functional) throw InputError("pairing: non-tensorial pairing needs a functional");
    return;
  }
  if (form2.rows() != lattice->num_planes() || form2.cols() != lattice->num_planes())
    throw InputError("pairing: form2 must be planes x planes");
  if (algebra_forms.size() != 1 && algebra_forms.size() != lattice->num_vertices())
    throw InputError("pairing: need one algebra form or one per vertex");
}

AdjointReport is_adjoint_structure(const PairingSpec& p, const std::vector<GaugeTransform>& gauge_samples,
                                   const std::vector<VertexSection>& field_samples) {
  if (!p.linear) throw InputError("is_adjoint_structure: adjoint structures are tensorial by definition");
  p.validate();
  AdjointReport rep;
  const auto& lat = *p.lattice;
  const std::size_t k = field_samples.size();
  std::vector<std::vector<Mat>> ads;
  ads.reserve(gauge_samples.size());
  for (const auto& g : gauge_samples) {
    require_same(g.lattice, p.lattice, "is_adjoint_structure");
    std::vector<Mat> per_vertex;
    per_vertex.reserve(lat.num_vertices());
    for (std::size_t x = 0; x < lat.num_vertices(); ++x) per_vertex.push_back(p.algebra->adjoint_matrix(g.values[x]));
    ads.push_back(std::move(per_vertex));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto& s = field_samples[i];
    const auto& t = field_samples[(i + 1) % k];
    require_same(s.lattice, p.lattice, "is_adjoint_structure");
    for (std::size_t x = 0; x < lat.num_vertices(); ++x) {
      const auto c = static_cast<Eigen::Index>(x);
      const Mat& b = p.form_at(x);
      const double before = s.values.col(c).dot(b * t.values.col(c));
      rep.scale = std::max(rep.scale, std::abs(before));
      for (const auto& ad : ads) {
        const double after = (ad[x] * s.values.col(c)).dot(b * (ad[x] * t.values.col(c)));
        rep.max_residual = std::max(rep.max_residual, std::abs(after - before));
      }
    }
  }
  rep.ok = rep.max_residual <= 1e-9 * rep.scale;
  return rep;
}

PairingSpaceDims pairing_space_dim_linear(int n, const AlgebraPtr& algebra) {
  if (n < 0) throw InputError("pairing_space_dim_linear: n must be non-negative");
  PairingSpaceDims d;
  d.fiber = fiber_rank(n, algebra->dim());
  d.invariant = d.fiber == 0 ? 0 : static_cast<int>(invariant_form_basis(algebra).size());
  return d;
}

}  // namespace ymt
