#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ymt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

/// Finite-dimensional real Lie algebra given by structure constants
/// [X_i, X_j] = sum_k c(i,j,k) X_k, with an optional complex matrix
/// representation used for exponentials, logarithms and Ad.
class LieAlgebra {
 public:
  LieAlgebra(std::string name, int dim, std::vector<double> structure_constants,
             std::vector<CMat> matrix_rep = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double c(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<double>& structure_constants() const { return c_; }

  bool has_matrix_rep() const { return !rep_.empty(); }
  const std::vector<CMat>& matrix_rep() const { return rep_; }
  int rep_size() const { return rep_.empty() ? 0 : static_cast<int>(rep_.front().rows()); }
  bool is_abelian() const;

  /// Jacobi-identity residual, max over all index triples.
  double jacobi_residual() const;

  /// sum_k x_k T_k in the matrix representation.
  CMat to_matrix(const Vec& x) const;
  /// Coordinates of a matrix in the span of the representation.
  Vec from_matrix(const CMat& m) const;
  /// (ad_x)_{kj}: matrix of Y -> [x, Y].
  Mat ad(const Vec& x) const;
  /// Matrix of Y -> g Y g^{-1} in algebra coordinates.
  Mat adjoint_matrix(const CMat& g) const;

 private:
  std::string name_;
  int dim_;
  std::vector<double> c_;
  std::vector<CMat> rep_;
  Vec rep_gram_diag_;
  Mat rep_gram_inv_;
  bool rep_orthogonal_ = false;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Bilinear form on an algebra, B(x, y) = x^T M y. Symmetry is not required.
struct BilinearForm {
  AlgebraPtr algebra;
  Mat matrix;

  double operator()(const Vec& x, const Vec& y) const { return x.dot(matrix * y); }
};

/// Injective homomorphism between matrix groups, with its differential.
struct GroupEmbedding {
  std::string name;
  AlgebraPtr source;
  AlgebraPtr target;
  Mat algebra_map;  // target.dim x source.dim
  std::function<CMat(const CMat&)> group_map;

  /// Checks injectivity and bracket intertwining; throws VerificationError.
  void validate(double tol = 1e-12) const;
};

Vec bracket(const LieAlgebra& a, const Vec& x, const Vec& y);
BilinearForm killing_form(const AlgebraPtr& a);

/// Basis of ad-invariant bilinear forms: nullspace of
/// B -> B([Z,X],Y) + B(X,[Z,Y]) over basis Z, X, Y.
std::vector<BilinearForm> invariant_form_basis(const AlgebraPtr& a);

/// Rows index (z, x, y) triples, columns index the l^2 entries B(i, j) row-major.
Mat invariance_constraint_matrix(const LieAlgebra& a);

Vec embed_algebra(const GroupEmbedding& e, const Vec& x);

/// Residual of B([Z,X],Y) + B(X,[Z,Y]) for given vectors.
double ad_invariance_residual(const BilinearForm& b, const Vec& z, const Vec& x, const Vec& y);

/// Matrix exponential / principal logarithm for unitary (or orthogonal) matrices.
CMat expm(const CMat& m);
/// Throws SingularityError when an eigenphase reaches pi.
CMat logm_unitary(const CMat& u);
/// Largest |eigenphase| of a unitary matrix.
double max_eigenphase(const CMat& u);

namespace catalog {
AlgebraPtr u1();
AlgebraPtr u1k(int k);
AlgebraPtr su2();
AlgebraPtr so3();
AlgebraPtr so2();
AlgebraPtr su2_u1();
/// Look up by name: "u1", "u1^k", "su2", "so3", "so2", "su2+u1".
AlgebraPtr by_name(const std::string& name);

GroupEmbedding so2_in_so3();
GroupEmbedding u1_in_su2();
GroupEmbedding identity(const AlgebraPtr& a);
}  // namespace catalog

}  // namespace ymt
