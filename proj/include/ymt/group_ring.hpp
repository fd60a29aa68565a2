#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ymt {

/// Recorded action of the cyclic group Z/n on the reals. Elements are 0..n-1
/// with addition mod n; `apply(g, x)` is g * x.
struct GroupAction {
  std::string name;
  int order = 1;
  std::function<mpq_class(int, const mpq_class&)> apply;

  int compose(int g, int h) const { return (g + h) % order; }
  int inverse(int g) const { return (order - g) % order; }
  /// g*(x+y) = g*x + g*y on the given samples, for every g.
  bool is_additive(const std::vector<mpq_class>& samples) const;
  /// Neutral element and composition laws on the given samples.
  bool is_action(const std::vector<mpq_class>& samples) const;
};

namespace actions {
GroupAction trivial(int order);
/// Z/2 acting by x -> -x.
GroupAction sign();
/// Z/n acting through multiplication by r^g with r = +-1; r = -1 needs even n.
GroupAction cyclic_unit(int order, int r);
/// Z/2 acting by x -> 1 - x. Not additive; used to exercise the failure path.
GroupAction affine_flip();
GroupAction by_name(const std::string& name, int order);
}  // namespace actions

/// Finitely supported element of Q[Z/n].
class GroupRingElement {
 public:
  explicit GroupRingElement(int order);
  static GroupRingElement unit(int order) { return basis(order, 0); }
  static GroupRingElement basis(int order, int g, const mpq_class& coeff = 1);

  int order() const { return order_; }
  const std::map<int, mpq_class>& coefficients() const { return coeffs_; }
  mpq_class coefficient(int g) const;
  void set(int g, const mpq_class& v);

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement operator-(const GroupRingElement& o) const { return *this + (-o); }
  /// Convolution product.
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(const mpq_class& q) const;
  bool operator==(const GroupRingElement& o) const { return order_ == o.order_ && coeffs_ == o.coeffs_; }
  std::string str() const;

 private:
  int order_;
  std::map<int, mpq_class> coeffs_;  // zero coefficients are never stored
};

/// Parses "p/q" or an integer or a decimal literal into an exact rational.
mpq_class parse_rational(const std::string& s);
std::string format_rational(const mpq_class& q);

}  // namespace ymt
