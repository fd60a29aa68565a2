#include "ymt/lie_core.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "ymt/error.hpp"

namespace ymt {

namespace {

using cd = std::complex<double>;

double hs_real(const CMat& a, const CMat& b) { return (a.adjoint() * b).trace().real(); }

}  // namespace

LieAlgebra::LieAlgebra(std::string name, int dim, std::vector<double> structure_constants,
                       std::vector<CMat> matrix_rep)
    : name_(std::move(name)), dim_(dim), c_(std::move(structure_constants)),
      rep_(std::move(matrix_rep)) {
  if (dim_ <= 0) throw InputError("algebra dimension must be positive");
  if (c_.size() != static_cast<std::size_t>(dim_) * dim_ * dim_)
    throw InputError("structure constants must have dim^3 entries");
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (std::abs(c(i, j, k) + c(j, i, k)) > 1e-12)
          throw InputError("structure constants of " + name_ + " are not antisymmetric");
  if (jacobi_residual() > 1e-12)
    throw InputError("structure constants of " + name_ + " violate the Jacobi identity");

  if (rep_.empty()) return;
  if (static_cast<int>(rep_.size()) != dim_)
    throw InputError("matrix representation must have one matrix per basis element");
  const auto d = rep_.front().rows();
  for (const auto& m : rep_)
    if (m.rows() != d || m.cols() != d) throw InputError("representation matrices must be square and equal-sized");

  Mat gram(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) gram(i, j) = hs_real(rep_[i], rep_[j]);
  rep_orthogonal_ = true;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j && gram(i, j) != 0.0) rep_orthogonal_ = false;
  rep_gram_diag_ = gram.diagonal();
  Eigen::FullPivLU<Mat> lu(gram);
  if (!lu.isInvertible()) throw InputError("representation of " + name_ + " is not faithful");
  rep_gram_inv_ = lu.inverse();

  // Commutators of representatives must reproduce the structure constants.
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const CMat comm = rep_[i] * rep_[j] - rep_[j] * rep_[i];
      Vec coeff(dim_);
      for (int k = 0; k < dim_; ++k) coeff(k) = c(i, j, k);
      if ((comm - to_matrix(coeff)).norm() > 1e-10)
        throw InputError("matrix representation of " + name_ + " does not match its structure constants");
    }
}

bool LieAlgebra::is_abelian() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

double LieAlgebra::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int n = 0; n < dim_; ++n) {
          double s = 0.0;
          for (int m = 0; m < dim_; ++m)
            s += c(i, j, m) * c(m, k, n) + c(j, k, m) * c(m, i, n) + c(k, i, m) * c(m, j, n);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

CMat LieAlgebra::to_matrix(const Vec& x) const {
  if (rep_.empty()) throw InputError("algebra " + name_ + " has no matrix representation");
  if (x.size() != dim_) throw InputError("coefficient vector has wrong dimension");
  CMat m = CMat::Zero(rep_size(), rep_size());
  for (int k = 0; k < dim_; ++k)
    if (x(k) != 0.0) m += x(k) * rep_[k];
  return m;
}

Vec LieAlgebra::from_matrix(const CMat& m) const {
  if (rep_.empty()) throw InputError("algebra " + name_ + " has no matrix representation");
  Vec r(dim_);
  for (int k = 0; k < dim_; ++k) r(k) = hs_real(rep_[k], m);
  if (rep_orthogonal_) return r.cwiseQuotient(rep_gram_diag_);
  return rep_gram_inv_ * r;
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != dim_) throw InputError("coefficient vector has wrong dimension");
  Mat a = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) a(k, j) += x(i) * c(i, j, k);
  }
  return a;
}

Mat LieAlgebra::adjoint_matrix(const CMat& g) const {
  const CMat ginv = g.inverse();
  Mat out(dim_, dim_);
  for (int j = 0; j < dim_; ++j) out.col(j) = from_matrix(g * rep_[j] * ginv);
  return out;
}

void GroupEmbedding::validate(double tol) const {
  if (!source || !target) throw InputError("embedding " + name + " lacks an algebra");
  if (algebra_map.rows() != target->dim() || algebra_map.cols() != source->dim())
    throw InputError("embedding " + name + " has a mis-shaped algebra map");
  Eigen::FullPivLU<Mat> lu(algebra_map);
  if (lu.rank() != source->dim()) throw VerificationError("embedding " + name + " is not injective");
  for (int i = 0; i < source->dim(); ++i)
    for (int j = 0; j < source->dim(); ++j) {
      const Vec ei = Vec::Unit(source->dim(), i), ej = Vec::Unit(source->dim(), j);
      const Vec lhs = algebra_map * bracket(*source, ei, ej);
      const Vec rhs = bracket(*target, algebra_map * ei, algebra_map * ej);
      if ((lhs - rhs).lpNorm<Eigen::Infinity>() > tol)
        throw VerificationError("embedding " + name + " does not intertwine brackets");
    }
}

Vec bracket(const LieAlgebra& a, const Vec& x, const Vec& y) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw InputError("bracket: coefficient vectors must have dimension " + std::to_string(a.dim()));
  Vec out = Vec::Zero(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < a.dim(); ++j) {
      if (y(j) == 0.0) continue;
      const double w = x(i) * y(j);
      for (int k = 0; k < a.dim(); ++k) out(k) += w * a.c(i, j, k);
    }
  }
  return out;
}

BilinearForm killing_form(const AlgebraPtr& a) {
  const int l = a->dim();
  std::vector<Mat> ads;
  ads.reserve(l);
  for (int i = 0; i < l; ++i) ads.push_back(a->ad(Vec::Unit(l, i)));
  Mat b(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) b(i, j) = (ads[i] * ads[j]).trace();
  return {a, b};
}

Mat invariance_constraint_matrix(const LieAlgebra& a) {
  // Row (z, x, y): sum_{ij} B_ij ( [Z,X]_i delta_{jy} + delta_{ix} [Z,Y]_j ).
  const int l = a.dim();
  Mat m = Mat::Zero(l * l * l, l * l);
  for (int z = 0; z < l; ++z)
    for (int x = 0; x < l; ++x)
      for (int y = 0; y < l; ++y) {
        const int row = (z * l + x) * l + y;
        for (int i = 0; i < l; ++i) {
          m(row, i * l + y) += a.c(z, x, i);
          m(row, x * l + i) += a.c(z, y, i);
        }
      }
  return m;
}

std::vector<BilinearForm> invariant_form_basis(const AlgebraPtr& a) {
  const int l = a->dim();
  const Mat m = invariance_constraint_matrix(*a);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (smax > 0.0 && s(i) > 1e-9 * smax) ++rank;

  std::vector<BilinearForm> basis;
  const Mat& v = svd.matrixV();
  for (int col = rank; col < l * l; ++col) {
    Mat b(l, l);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) {
        const double e = v(i * l + j, col);
        b(i, j) = std::abs(e) < 1e-14 ? 0.0 : e;
      }
    basis.push_back({a, b});
  }

  // The Killing form must lie in the span.
  const Mat k = killing_form(a).matrix;
  if (k.norm() > 0.0) {
    Mat span(l * l, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c)
      span.col(static_cast<Eigen::Index>(c)) = basis[c].matrix.reshaped<Eigen::RowMajor>();
    const Vec kv = k.reshaped<Eigen::RowMajor>();
    const Vec coeff = span.colPivHouseholderQr().solve(kv);
    if ((span * coeff - kv).norm() > 1e-9 * kv.norm())
      throw VerificationError("Killing form of " + a->name() + " is outside the invariant span");
  }
  return basis;
}

Vec embed_algebra(const GroupEmbedding& e, const Vec& x) {
  if (x.size() != e.source->dim())
    throw InputError("embed_algebra: expected dimension " + std::to_string(e.source->dim()));
  return e.algebra_map * x;
}

double ad_invariance_residual(const BilinearForm& b, const Vec& z, const Vec& x, const Vec& y) {
  const auto& a = *b.algebra;
  return std::abs(b(bracket(a, z, x), y) + b(x, bracket(a, z, y)));
}

CMat expm(const CMat& m) { return m.exp(); }

double max_eigenphase(const CMat& u) {
  Eigen::ComplexSchur<CMat> schur(u, false);
  double worst = 0.0;
  const auto& t = schur.matrixT();
  for (Eigen::Index i = 0; i < t.rows(); ++i) worst = std::max(worst, std::abs(std::arg(t(i, i))));
  return worst;
}

CMat logm_unitary(const CMat& u) {
  Eigen::ComplexSchur<CMat> schur(u);
  const auto& t = schur.matrixT();
  const auto& q = schur.matrixU();
  CMat d = CMat::Zero(u.rows(), u.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const double phase = std::arg(t(i, i));
    if (std::abs(phase) >= std::numbers::pi - 1e-12)
      throw SingularityError("holonomy eigenphase at pi: principal logarithm undefined");
    d(i, i) = cd(std::log(std::abs(t(i, i))), phase);
  }
  return q * d * q.adjoint();
}

namespace catalog {

namespace {

std::vector<double> epsilon_constants() {
  std::vector<double> c(27, 0.0);
  auto set = [&](int i, int j, int k, double v) { c[(i * 3 + j) * 3 + k] = v; };
  set(0, 1, 2, 1); set(1, 2, 0, 1); set(2, 0, 1, 1);
  set(1, 0, 2, -1); set(2, 1, 0, -1); set(0, 2, 1, -1);
  return c;
}

std::vector<CMat> su2_rep() {
  const cd i(0, 1);
  CMat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  const cd h(0, -0.5);
  return {h * s1, h * s2, h * s3};
}

std::vector<CMat> so3_rep() {
  std::vector<CMat> r;
  for (int a = 0; a < 3; ++a) {
    CMat m = CMat::Zero(3, 3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        // (L_a)_{jk} = -epsilon_{ajk}
        const int p[3] = {a, j, k};
        int sign = 0;
        if (p[0] != p[1] && p[1] != p[2] && p[0] != p[2])
          sign = ((p[1] - p[0] + 3) % 3 == 1) ? 1 : -1;
        m(j, k) = -sign;
      }
    r.push_back(m);
  }
  return r;
}

}  // namespace

AlgebraPtr u1() {
  static const auto a = std::make_shared<const LieAlgebra>(
      "u1", 1, std::vector<double>{0.0}, std::vector<CMat>{CMat::Constant(1, 1, cd(0, 1))});
  return a;
}

AlgebraPtr u1k(int k) {
  if (k < 1) throw InputError("u1^k needs k >= 1");
  if (k == 1) return u1();
  std::vector<CMat> rep;
  for (int i = 0; i < k; ++i) {
    CMat m = CMat::Zero(k, k);
    m(i, i) = cd(0, 1);
    rep.push_back(m);
  }
  return std::make_shared<const LieAlgebra>("u1^" + std::to_string(k), k,
                                            std::vector<double>(static_cast<std::size_t>(k * k * k), 0.0), rep);
}

AlgebraPtr su2() {
  static const auto a = std::make_shared<const LieAlgebra>("su2", 3, epsilon_constants(), su2_rep());
  return a;
}

AlgebraPtr so3() {
  static const auto a = std::make_shared<const LieAlgebra>("so3", 3, epsilon_constants(), so3_rep());
  return a;
}

AlgebraPtr so2() {
  CMat j(2, 2);
  j << 0, -1, 1, 0;
  static const auto a =
      std::make_shared<const LieAlgebra>("so2", 1, std::vector<double>{0.0}, std::vector<CMat>{j});
  return a;
}

AlgebraPtr su2_u1() {
  static const auto a = [] {
    std::vector<double> c(64, 0.0);
    const auto e = epsilon_constants();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) c[(i * 4 + j) * 4 + k] = e[(i * 3 + j) * 3 + k];
    std::vector<CMat> rep;
    for (const auto& m : su2_rep()) {
      CMat b = CMat::Zero(3, 3);
      b.topLeftCorner(2, 2) = m;
      rep.push_back(b);
    }
    CMat u = CMat::Zero(3, 3);
    u(2, 2) = cd(0, 1);
    rep.push_back(u);
    return std::make_shared<const LieAlgebra>("su2+u1", 4, c, rep);
  }();
  return a;
}

AlgebraPtr by_name(const std::string& name) {
  if (name == "u1") return u1();
  if (name == "su2") return su2();
  if (name == "so3") return so3();
  if (name == "so2") return so2();
  if (name == "su2+u1") return su2_u1();
  if (name.rfind("u1^", 0) == 0) {
    try {
      return u1k(std::stoi(name.substr(3)));
    } catch (const std::logic_error&) {
    }
  }
  throw InputError("unknown algebra '" + name + "'");
}

GroupEmbedding so2_in_so3() {
  Mat d = Mat::Zero(3, 1);
  d(2, 0) = 1.0;
  GroupEmbedding e{"so2->so3", so2(), so3(), d, [](const CMat& g) {
                     CMat out = CMat::Identity(3, 3);
                     out.topLeftCorner(2, 2) = g;
                     return out;
                   }};
  return e;
}

GroupEmbedding u1_in_su2() {
  Mat d = Mat::Zero(3, 1);
  d(2, 0) = 2.0;
  GroupEmbedding e{"u1->su2", u1(), su2(), d, [](const CMat& g) {
                     CMat out = CMat::Zero(2, 2);
                     out(0, 0) = std::conj(g(0, 0));
                     out(1, 1) = g(0, 0);
                     return out;
                   }};
  return e;
}

GroupEmbedding identity(const AlgebraPtr& a) {
  return {"id:" + a->name(), a, a, Mat::Identity(a->dim(), a->dim()), [](const CMat& g) { return g; }};
}

}  // namespace catalog

}  // namespace ymt
