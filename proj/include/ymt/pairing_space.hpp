#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ymt/fields.hpp"
#include "ymt/kernels.hpp"

namespace ymt {

/// Exact non-negative rational with 64-bit parts, kept reduced.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t n, std::int64_t d);
  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend Fraction operator+(Fraction a, Fraction b);
  friend bool operator==(const Fraction& a, const Fraction& b) = default;
  friend bool operator<(const Fraction& a, const Fraction& b);
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
};

struct RankQuery {
  int n = 2;
  int l = 1;
  std::optional<int> q;
  bool contractible = false;
  bool parallelizable_abelian = false;
};

enum class BoundKind { general, q_connected, equality };

struct RankBound {
  Fraction value;
  bool strict = false;
  BoundKind kind = BoundKind::general;
};

/// ((n^2 - n)/2)^2 l^2: rank of Hom(Lambda^2 T*M (x2) (x) E_g (x2); R).
std::int64_t fiber_rank(int n, int l);
RankBound rank_upper_bound(const RankQuery& q);
/// Value (n^2-n)^2 l^2/4 + 1 attained when the bundle is trivial.
std::int64_t trivial_bundle_rank(int n, int l);

struct LowRankPoint {
  int n;
  int l;
  std::int64_t rank;
};
/// All (n, l) with 2 <= n <= n_max, 1 <= l <= l_max and trivial_bundle_rank <= z.
std::vector<LowRankPoint> enumerate_low_rank(std::int64_t z, int n_max, int l_max);

/// Bilinear pairing on algebra-valued 2-cochains. In the tensorial case the
/// pairing is pointwise: sum over vertices of sum_{a,b} form2(a,b) w(x;a)^T B_x w'(x;b).
struct PairingSpec {
  LatticePtr lattice;
  AlgebraPtr algebra;
  Mat form2;                       // planes x planes at a common base vertex
  std::vector<Mat> algebra_forms;  // one form, or one per vertex
  bool linear = true;
  std::function<double(const AlgebraCochain2&, const AlgebraCochain2&)> functional;
  std::string kind = "matrix";

  static PairingSpec tensorial(LatticePtr lat, AlgebraPtr alg, const Mat& algebra_form);
  static PairingSpec killing(LatticePtr lat, AlgebraPtr alg);
  static PairingSpec position_dependent(LatticePtr lat, AlgebraPtr alg, std::vector<Mat> forms);
  static PairingSpec custom(LatticePtr lat, AlgebraPtr alg,
                            std::function<double(const AlgebraCochain2&, const AlgebraCochain2&)> f);

  const Mat& form_at(std::size_t vertex) const;
  kernels::PairingData data() const { return {form2, algebra_forms}; }
  void validate() const;
};

struct AdjointReport {
  bool ok = false;
  double max_residual = 0.0;
  double scale = 1.0;
};

/// Ad-invariance of a tensorial pairing against sampled gauge transforms and
/// sections: <Ad_g s, Ad_g s'>_x = <s, s'>_x at every vertex.
AdjointReport is_adjoint_structure(const PairingSpec& p, const std::vector<GaugeTransform>& gauge_samples,
                                   const std::vector<VertexSection>& field_samples);

struct PairingSpaceDims {
  std::int64_t fiber = 0;
  int invariant = 0;
};
PairingSpaceDims pairing_space_dim_linear(int n, const AlgebraPtr& algebra);

}  // namespace ymt
