#include "ymt/theory.hpp"

#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ymt/error.hpp"
#include "ymt/kernels.hpp"

namespace ymt {

YMTTheory YMTTheory::make(PairingSpec p, std::string label) {
  YMTTheory t{p.lattice, p.algebra, std::move(p), std::move(label)};
  t.validate();
  return t;
}

void YMTTheory::validate() const {
  pairing.validate();
  require_same(lattice, pairing.lattice, "theory pairing");
  require_same(algebra, pairing.algebra, "theory pairing");
}

namespace {

void check_operands(const YMTTheory& t, const AlgebraCochain2& w) {
  require_same(t.lattice, w.lattice, "pairing operand");
  require_same(t.algebra, w.algebra, "pairing operand");
}

}  // namespace

Vec pairing_density(const YMTTheory& t, const AlgebraCochain2& w1, const AlgebraCochain2& w2, Exec exec) {
  if (!t.pairing.linear) throw InputError("pairing_density: pairing is not tensorial");
  check_operands(t, w1);
  check_operands(t, w2);
  Vec out;
  const auto pd = t.pairing.data();
  if (exec == Exec::serial)
    kernels::serial::pairing_density(*t.lattice, pd, w1.values, w2.values, out);
  else
    kernels::omp::pairing_density(*t.lattice, pd, w1.values, w2.values, out);
  return out;
}

double integrated_pairing(const YMTTheory& t, const AlgebraCochain2& w1, const AlgebraCochain2& w2, Exec exec) {
  if (!t.pairing.linear) {
    check_operands(t, w1);
    check_operands(t, w2);
    return t.pairing.functional(w1, w2);
  }
  return t.lattice->volume_weight() * kernels::ordered_sum(pairing_density(t, w1, w2, exec));
}

double ymt_action(const YMTTheory& t, const AlgebraCochain1& d, Exec exec) {
  const auto f = curvature(d, exec);
  return integrated_pairing(t, f, f, exec);
}

double ymt_action(const YMTTheory& t, const LinkField& u, Exec exec) {
  const auto f = plaquette_curvature(u, exec);
  return integrated_pairing(t, f, f, exec);
}

bool within_invariance_tolerance(double deviation, double reference) {
  return deviation <= 1e-9 * std::abs(reference) + 1e-12;
}

GaugeReport gauge_invariance_report(const YMTTheory& t, const LinkField& u, const std::vector<GaugeTransform>& gauges) {
  GaugeReport rep;
  rep.reference = ymt_action(t, u);
  rep.trials = static_cast<int>(gauges.size());
  for (const auto& g : gauges) {
    const double s = ymt_action(t, gauge_transform_links(u, g));
    rep.max_deviation = std::max(rep.max_deviation, std::abs(s - rep.reference));
  }
  rep.invariant = within_invariance_tolerance(rep.max_deviation, rep.reference);
  return rep;
}

GaugeReport gauge_invariance_report(const YMTTheory& t, const LinkField& u, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("gauge_invariance_report: trials must be at least 1");
  Rng rng(seed);
  std::vector<GaugeTransform> gauges;
  gauges.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) gauges.push_back(random_gauge(t.lattice, t.algebra, rng));
  return gauge_invariance_report(t, u, gauges);
}

double bf_action(const YMTTheory& t, const AlgebraCochain1& d, const AlgebraCochain2& b) {
  if (t.lattice->dim() != 4) throw InputError("bf_action: BF theory needs a 4-dimensional lattice");
  return integrated_pairing(t, curvature(d), b);
}

double bf_action(const YMTTheory& t, const LinkField& u, const AlgebraCochain2& b) {
  if (t.lattice->dim() != 4) throw InputError("bf_action: BF theory needs a 4-dimensional lattice");
  return integrated_pairing(t, plaquette_curvature(u), b);
}

Mat trace_form(const LieAlgebra& alg) {
  if (!alg.has_matrix_rep()) throw InputError("trace_form: algebra '" + alg.name() + "' has no matrix representation");
  const int l = alg.dim();
  Mat k(l, l);
  const auto& rep = alg.matrix_rep();
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) k(i, j) = (rep[i] * rep[j]).trace().real();
  return k;
}

double topological_integral(const AlgebraCochain2& f, Exec exec) {
  const auto& lat = *f.lattice;
  if (lat.dim() != 4) throw InputError("topological term needs a 4-dimensional lattice");
  const Mat k = trace_form(*f.algebra);
  Vec dens;
  if (exec == Exec::serial)
    kernels::serial::topological_density(lat, k, f.values, dens);
  else
    kernels::omp::topological_density(lat, k, f.values, dens);
  return lat.volume_weight() * kernels::ordered_sum(dens);
}

double topological_term(const YMTTheory& t, const AlgebraCochain1& d, Exec exec) {
  require_same(t.lattice, d.lattice, "topological_term");
  require_same(t.algebra, d.algebra, "topological_term");
  return topological_integral(curvature(d, exec), exec);
}

FullYM full_ym(const YMTTheory& t, const AlgebraCochain1& d) {
  FullYM r;
  r.ymt = ymt_action(t, d);
  r.topological = topological_term(t, d);
  r.total = r.ymt + r.topological;
  return r;
}

AlgebraCochain1 covariant_derivative(const LinkField& u, const VertexSection& phi) {
  require_same(u.lattice, phi.lattice, "covariant_derivative");
  require_same(u.algebra, phi.algebra, "covariant_derivative");
  const auto& lat = *u.lattice;
  auto out = AlgebraCochain1::zero(u.lattice, u.algebra);
  for (std::size_t e = 0; e < lat.num_edges(); ++e) {
    const auto src = static_cast<Eigen::Index>(lat.edge_source(e));
    const auto tgt = static_cast<Eigen::Index>(lat.edge_target(e));
    out.values.col(static_cast<Eigen::Index>(e)) =
        u.algebra->adjoint_matrix(u.links[e]) * phi.values.col(tgt) - phi.values.col(src);
  }
  return out;
}

AlgebraCochain1 covariant_derivative(const AlgebraCochain1& d, const VertexSection& phi) {
  require_same(d.lattice, phi.lattice, "covariant_derivative");
  require_same(d.algebra, phi.algebra, "covariant_derivative");
  const auto& lat = *d.lattice;
  auto out = coboundary0(phi);
  if (d.algebra->is_abelian()) return out;
  for (std::size_t e = 0; e < lat.num_edges(); ++e) {
    const auto c = static_cast<Eigen::Index>(e);
    out.values.col(c) += bracket(*d.algebra, d.values.col(c),
                                 phi.values.col(static_cast<Eigen::Index>(lat.edge_source(e))));
  }
  return out;
}

bool ParameterizedTheory::has_parameter(const std::string& p) const {
  return std::find(parameters.begin(), parameters.end(), p) != parameters.end();
}

double ParameterizedTheory::operator()(const std::string& p, const LinkField& u) const {
  if (!has_parameter(p)) throw InputError("parameterized theory: unknown parameter '" + p + "'");
  return functional_of(p, u);
}

namespace {

double condition_of(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (smax == 0.0 || smin <= 1e-12 * smax) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

Eigen::SparseMatrix<double> coboundary_matrix(const Lattice& lat, int l) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(lat.num_plaquettes() * 4 * static_cast<std::size_t>(l));
  for (std::size_t p = 0; p < lat.num_plaquettes(); ++p) {
    const auto b = lat.plaquette_boundary(p);
    for (const auto& er : b)
      for (int a = 0; a < l; ++a)
        trip.emplace_back(static_cast<int>(p) * l + a, static_cast<int>(er.edge) * l + a, er.sign);
  }
  Eigen::SparseMatrix<double> d(static_cast<Eigen::Index>(lat.num_plaquettes()) * l,
                                static_cast<Eigen::Index>(lat.num_edges()) * l);
  d.setFromTriplets(trip.begin(), trip.end());
  return d;
}

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

}  // namespace

CochainGram cochain_gram(const YMTTheory& t) {
  if (!t.pairing.linear)
    throw PreconditionError("wrap_parameterized: a perfect pairing needs a tensorial (Gram-matrix) pairing");
  const auto& lat = *t.lattice;
  const int n = lat.dim();
  const int np = lat.num_planes();
  CochainGram g;
  g.condition_number = 1.0;
  const double c2 = condition_of(t.pairing.form2);
  for (std::size_t x = 0; x < lat.num_vertices(); ++x) {
    const Mat& b = t.pairing.form_at(x);
    const double cb = condition_of(b);
    g.condition_number = std::max(g.condition_number, cb * c2);
    Mat k2 = Mat::Zero(np * b.rows(), np * b.cols());
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < np; ++j) k2.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = t.pairing.form2(i, j) * b;
    Mat k1 = Mat::Zero(n * b.rows(), n * b.cols());
    for (int i = 0; i < n; ++i) k1.block(i * b.rows(), i * b.cols(), b.rows(), b.cols()) = b;
    g.blocks1.push_back(std::move(k1));
    g.blocks2.push_back(std::move(k2));
  }
  if (!std::isfinite(g.condition_number))
    throw PreconditionError("wrap_parameterized: pairing is degenerate, a perfect pairing is required");
  return g;
}

double gram_pairing1(const CochainGram& g, const AlgebraCochain1& a, const AlgebraCochain1& b) {
  // Edges v*n+mu are contiguous per vertex, so column-major storage groups them.
  const Vec va = flatten(a.values), vb = flatten(b.values);
  const auto blk = g.blocks1.front().rows();
  Vec acc(static_cast<Eigen::Index>(g.blocks1.size()));
  for (std::size_t x = 0; x < g.blocks1.size(); ++x) {
    const auto off = static_cast<Eigen::Index>(x) * blk;
    acc(static_cast<Eigen::Index>(x)) = va.segment(off, blk).dot(g.blocks1[x] * vb.segment(off, blk));
  }
  return a.lattice->volume_weight() * kernels::ordered_sum(acc);
}

double gram_pairing2(const CochainGram& g, const AlgebraCochain2& a, const AlgebraCochain2& b) {
  const Vec va = flatten(a.values), vb = flatten(b.values);
  const auto blk = g.blocks2.front().rows();
  Vec acc(static_cast<Eigen::Index>(g.blocks2.size()));
  for (std::size_t x = 0; x < g.blocks2.size(); ++x) {
    const auto off = static_cast<Eigen::Index>(x) * blk;
    acc(static_cast<Eigen::Index>(x)) = va.segment(off, blk).dot(g.blocks2[x] * vb.segment(off, blk));
  }
  return a.lattice->volume_weight() * kernels::ordered_sum(acc);
}

AlgebraCochain1 coboundary_adjoint(const CochainGram& g, const AlgebraCochain2& w) {
  const auto& lat = *w.lattice;
  const int l = w.algebra->dim();
  const auto d = coboundary_matrix(lat, l);
  const Vec v = flatten(w.values);
  const auto blk2 = g.blocks2.front().rows();
  Vec g2v(v.size());
  for (std::size_t x = 0; x < g.blocks2.size(); ++x) {
    const auto off = static_cast<Eigen::Index>(x) * blk2;
    g2v.segment(off, blk2) = g.blocks2[x] * v.segment(off, blk2);
  }
  const Vec dt = d.transpose() * g2v;
  const auto blk1 = g.blocks1.front().rows();
  Vec out(dt.size());
  for (std::size_t x = 0; x < g.blocks1.size(); ++x) {
    const auto off = static_cast<Eigen::Index>(x) * blk1;
    out.segment(off, blk1) = g.blocks1[x].fullPivLu().solve(dt.segment(off, blk1));
  }
  auto res = AlgebraCochain1::zero(w.lattice, w.algebra);
  res.values = Eigen::Map<const Mat>(out.data(), l, static_cast<Eigen::Index>(lat.num_edges()));
  return res;
}

ParameterizedTheory wrap_parameterized(const YMTTheory& t, std::vector<std::string> parameters, std::uint64_t seed) {
  const auto g = cochain_gram(t);
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const auto d = random_cochain1(t.lattice, t.algebra, rng);
    const auto dd = coboundary(d);
    const double lhs = gram_pairing2(g, dd, dd);
    const double rhs = gram_pairing1(g, d, coboundary_adjoint(g, dd));
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  if (worst > 1e-9)
    throw VerificationError("wrap_parameterized: adjoint identity residual " + std::to_string(worst));
  ParameterizedTheory p;
  p.base = t;
  p.parameters = std::move(parameters);
  p.condition_number = g.condition_number;
  p.adjoint_residual = worst;
  p.functional_of = [t](const std::string&, const LinkField& u) { return ymt_action(t, u); };
  return p;
}

}  // namespace ymt
