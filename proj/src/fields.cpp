#include "ymt/fields.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ymt/error.hpp"
#include "ymt/kernels.hpp"

namespace ymt {

namespace {

Eigen::Index cols(std::size_t n) { return static_cast<Eigen::Index>(n); }

bool rep_is_real(const LieAlgebra& alg) {
  for (const auto& m : alg.matrix_rep())
    if (m.imag().cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

bool rep_is_traceless(const LieAlgebra& alg) {
  for (const auto& m : alg.matrix_rep())
    if (std::abs(m.trace()) != 0.0) return false;
  return true;
}

void require_rep(const LieAlgebra& alg, const char* what) {
  if (!alg.has_matrix_rep())
    throw InputError(std::string(what) + ": algebra " + alg.name() + " has no matrix representation");
}

}  // namespace

void require_same(const LatticePtr& a, const LatticePtr& b, const char* what) {
  if (!a || !b || !(a == b || *a == *b)) throw InputError(std::string(what) + ": lattice mismatch");
}

void require_same(const AlgebraPtr& a, const AlgebraPtr& b, const char* what) {
  if (!a || !b || !(a == b || a->name() == b->name())) throw InputError(std::string(what) + ": algebra mismatch");
}

VertexSection VertexSection::zero(LatticePtr lat, AlgebraPtr alg) {
  const auto v = lat->num_vertices();
  const int l = alg->dim();
  return {std::move(lat), std::move(alg), Mat::Zero(l, cols(v))};
}

AlgebraCochain1 AlgebraCochain1::zero(LatticePtr lat, AlgebraPtr alg) {
  const auto e = lat->num_edges();
  const int l = alg->dim();
  return {std::move(lat), std::move(alg), Mat::Zero(l, cols(e))};
}

AlgebraCochain2 AlgebraCochain2::zero(LatticePtr lat, AlgebraPtr alg) {
  const auto p = lat->num_plaquettes();
  const int l = alg->dim();
  return {std::move(lat), std::move(alg), Mat::Zero(l, cols(p))};
}

Vec AlgebraCochain2::value(std::size_t x, int mu, int nu) const {
  if (mu == nu) return Vec::Zero(algebra->dim());
  if (mu < nu) return values.col(cols(lattice->plaquette(x, lattice->plane(mu, nu))));
  return -values.col(cols(lattice->plaquette(x, lattice->plane(nu, mu))));
}

LinkField LinkField::identity(LatticePtr lat, AlgebraPtr alg) {
  require_rep(*alg, "LinkField");
  const auto d = alg->rep_size();
  const auto e = lat->num_edges();
  return {std::move(lat), std::move(alg), std::vector<CMat>(e, CMat::Identity(d, d))};
}

CMat LinkField::link(EdgeRef e) const { return e.sign > 0 ? links[e.edge] : CMat(links[e.edge].adjoint()); }

double group_residual(const LieAlgebra& alg, const CMat& u) {
  const auto d = u.rows();
  double r = (u.adjoint() * u - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
  if (rep_is_traceless(alg)) r = std::max(r, std::abs(u.determinant() - 1.0));
  if (rep_is_real(alg)) {
    r = std::max(r, u.imag().cwiseAbs().maxCoeff());
    r = std::max(r, std::abs(u.determinant() - 1.0));
  }
  return r;
}

double LinkField::group_residual() const {
  double r = 0.0;
  for (const auto& u : links) r = std::max(r, ymt::group_residual(*algebra, u));
  return r;
}

GaugeTransform GaugeTransform::identity(LatticePtr lat, AlgebraPtr alg) {
  require_rep(*alg, "GaugeTransform");
  const auto d = alg->rep_size();
  const auto v = lat->num_vertices();
  return {std::move(lat), std::move(alg), std::vector<CMat>(v, CMat::Identity(d, d))};
}

GaugeTransform GaugeTransform::constant(LatticePtr lat, AlgebraPtr alg, const CMat& h) {
  const auto v = lat->num_vertices();
  return {std::move(lat), std::move(alg), std::vector<CMat>(v, h)};
}

GaugeTransform GaugeTransform::inverse() const {
  GaugeTransform g{lattice, algebra, {}};
  g.values.reserve(values.size());
  for (const auto& m : values) g.values.push_back(m.adjoint());
  return g;
}

double GaugeTransform::group_residual() const {
  double r = 0.0;
  for (const auto& u : values) r = std::max(r, ymt::group_residual(*algebra, u));
  return r;
}

AlgebraCochain1 coboundary0(const VertexSection& phi) {
  const auto& lat = *phi.lattice;
  auto out = AlgebraCochain1::zero(phi.lattice, phi.algebra);
  for (std::size_t e = 0; e < lat.num_edges(); ++e)
    out.values.col(cols(e)) = phi.values.col(cols(lat.edge_target(e))) - phi.values.col(cols(lat.edge_source(e)));
  return out;
}

AlgebraCochain2 coboundary(const AlgebraCochain1& d, Exec exec) {
  AlgebraCochain2 out{d.lattice, d.algebra, {}};
  if (exec == Exec::serial)
    kernels::serial::coboundary(*d.lattice, d.values, out.values);
  else
    kernels::omp::coboundary(*d.lattice, d.values, out.values);
  return out;
}

AlgebraCochain2 cup_bracket(const AlgebraCochain1& d, Exec exec) {
  AlgebraCochain2 out{d.lattice, d.algebra, {}};
  if (exec == Exec::serial)
    kernels::serial::cup_bracket(*d.lattice, *d.algebra, d.values, out.values);
  else
    kernels::omp::cup_bracket(*d.lattice, *d.algebra, d.values, out.values);
  return out;
}

AlgebraCochain2 curvature(const AlgebraCochain1& d, Exec exec) {
  auto f = coboundary(d, exec);
  if (!d.algebra->is_abelian()) f.values += cup_bracket(d, exec).values;
  return f;
}

Mat coboundary2(const AlgebraCochain2& w) {
  const auto& lat = *w.lattice;
  const int n = lat.dim();
  std::vector<std::array<int, 3>> cubes;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) cubes.push_back({a, b, c});
  Mat out = Mat::Zero(w.algebra->dim(), cols(lat.num_vertices() * cubes.size()));
  for (std::size_t x = 0; x < lat.num_vertices(); ++x)
    for (std::size_t k = 0; k < cubes.size(); ++k) {
      const auto [mu, nu, rho] = cubes[k];
      out.col(cols(x * cubes.size() + k)) =
          w.value(lat.shift(x, mu), nu, rho) - w.value(x, nu, rho) - w.value(lat.shift(x, nu), mu, rho) +
          w.value(x, mu, rho) + w.value(lat.shift(x, rho), mu, nu) - w.value(x, mu, nu);
    }
  return out;
}

AlgebraCochain2 plaquette_curvature(const LinkField& u, Exec exec) {
  require_rep(*u.algebra, "plaquette_curvature");
  AlgebraCochain2 out{u.lattice, u.algebra, {}};
  const auto bad = exec == Exec::serial ? kernels::serial::plaquette_log(*u.lattice, *u.algebra, u.links, out.values)
                                        : kernels::omp::plaquette_log(*u.lattice, *u.algebra, u.links, out.values);
  if (bad >= 0) {
    const auto p = static_cast<std::size_t>(bad);
    const auto x = u.lattice->coords(u.lattice->plaquette_base(p));
    const auto [mu, nu] = u.lattice->plane_axes(u.lattice->plaquette_plane(p));
    std::string where = "(";
    for (std::size_t i = 0; i < x.size(); ++i) where += (i ? "," : "") + std::to_string(x[i]);
    where += "; " + std::to_string(mu) + "," + std::to_string(nu) + ")";
    throw SingularityError("plaquette " + std::to_string(p) + " at " + where +
                           " has holonomy at distance pi from the identity");
  }
  return out;
}

LinkField gauge_transform_links(const LinkField& u, const GaugeTransform& g, Exec exec) {
  require_same(u.lattice, g.lattice, "gauge_transform_links");
  require_same(u.algebra, g.algebra, "gauge_transform_links");
  LinkField out{u.lattice, u.algebra, {}};
  if (exec == Exec::serial)
    kernels::serial::gauge_links(*u.lattice, u.links, g.values, out.links);
  else
    kernels::omp::gauge_links(*u.lattice, u.links, g.values, out.links);
  return out;
}

AlgebraCochain2 adjoint_transform(const AlgebraCochain2& w, const GaugeTransform& g) {
  require_same(w.lattice, g.lattice, "adjoint_transform");
  AlgebraCochain2 out = w;
  const auto& lat = *w.lattice;
  for (std::size_t x = 0; x < lat.num_vertices(); ++x) {
    const Mat ad = w.algebra->adjoint_matrix(g.values[x]);
    for (int a = 0; a < lat.num_planes(); ++a) {
      const auto c = cols(lat.plaquette(x, a));
      out.values.col(c) = ad * w.values.col(c);
    }
  }
  return out;
}

VertexSection adjoint_transform(const VertexSection& s, const GaugeTransform& g) {
  require_same(s.lattice, g.lattice, "adjoint_transform");
  VertexSection out = s;
  for (std::size_t x = 0; x < s.lattice->num_vertices(); ++x)
    out.values.col(cols(x)) = s.algebra->adjoint_matrix(g.values[x]) * s.values.col(cols(x));
  return out;
}

LinkField exp_links(const AlgebraCochain1& d) {
  require_rep(*d.algebra, "exp_links");
  LinkField out{d.lattice, d.algebra, {}};
  out.links.reserve(d.lattice->num_edges());
  for (std::size_t e = 0; e < d.lattice->num_edges(); ++e)
    out.links.push_back(expm(d.algebra->to_matrix(d.values.col(cols(e)))));
  return out;
}

AlgebraCochain1 log_links(const LinkField& u) {
  auto out = AlgebraCochain1::zero(u.lattice, u.algebra);
  for (std::size_t e = 0; e < u.links.size(); ++e) out.values.col(cols(e)) = u.algebra->from_matrix(logm_unitary(u.links[e]));
  return out;
}

Vec random_algebra_vector(const LieAlgebra& alg, Rng& rng, double amplitude) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec v(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) v(i) = amplitude * n(rng);
  return v;
}

CMat random_group_element(const LieAlgebra& alg, Rng& rng) {
  require_rep(alg, "random_group_element");
  // exp of a random direction scaled to a uniformly drawn angle below pi.
  std::uniform_real_distribution<double> angle(0.0, 0.95 * std::numbers::pi);
  Vec v = random_algebra_vector(alg, rng, 1.0);
  CMat x = alg.to_matrix(v);
  const double spread = std::max(1e-300, std::sqrt((x.adjoint() * x).trace().real() / x.rows()));
  const double scale = angle(rng) / spread;
  return expm(scale * x);
}

AlgebraCochain1 random_cochain1(LatticePtr lat, AlgebraPtr alg, Rng& rng, double amplitude) {
  auto d = AlgebraCochain1::zero(std::move(lat), std::move(alg));
  std::normal_distribution<double> n(0.0, 1.0);
  for (Eigen::Index c = 0; c < d.values.cols(); ++c)
    for (Eigen::Index r = 0; r < d.values.rows(); ++r) d.values(r, c) = amplitude * n(rng);
  return d;
}

VertexSection random_section(LatticePtr lat, AlgebraPtr alg, Rng& rng, double amplitude) {
  auto s = VertexSection::zero(std::move(lat), std::move(alg));
  std::normal_distribution<double> n(0.0, 1.0);
  for (Eigen::Index c = 0; c < s.values.cols(); ++c)
    for (Eigen::Index r = 0; r < s.values.rows(); ++r) s.values(r, c) = amplitude * n(rng);
  return s;
}

GaugeTransform random_gauge(LatticePtr lat, AlgebraPtr alg, Rng& rng) {
  GaugeTransform g{lat, alg, {}};
  g.values.reserve(lat->num_vertices());
  for (std::size_t x = 0; x < lat->num_vertices(); ++x) g.values.push_back(random_group_element(*alg, rng));
  return g;
}

LinkField random_links(LatticePtr lat, AlgebraPtr alg, Rng& rng, double amplitude) {
  return exp_links(random_cochain1(std::move(lat), std::move(alg), rng, amplitude));
}

}  // namespace ymt
