#include "ymt/group_ring.hpp"

#include <sstream>

#include "ymt/error.hpp"

namespace ymt {

bool GroupAction::is_additive(const std::vector<mpq_class>& samples) const {
  for (int g = 0; g < order; ++g)
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& x = samples[i];
      const auto& y = samples[(i + 1) % samples.size()];
      if (apply(g, x + y) != apply(g, x) + apply(g, y)) return false;
    }
  return true;
}

bool GroupAction::is_action(const std::vector<mpq_class>& samples) const {
  for (const auto& x : samples) {
    if (apply(0, x) != x) return false;
    for (int g = 0; g < order; ++g)
      for (int h = 0; h < order; ++h)
        if (apply(g, apply(h, x)) != apply(compose(g, h), x)) return false;
  }
  return true;
}

namespace actions {

GroupAction trivial(int order) {
  if (order < 1) throw InputError("group order must be positive");
  return {"trivial", order, [](int, const mpq_class& x) { return x; }};
}

GroupAction sign() { return cyclic_unit(2, -1); }

GroupAction cyclic_unit(int order, int r) {
  if (order < 1) throw InputError("group order must be positive");
  if (r != 1 && r != -1) throw InputError("cyclic action: the unit must be +1 or -1");
  if (r == -1 && order % 2 != 0) throw InputError("cyclic action: r = -1 needs an even order so that r^n = 1");
  if (r == 1) return trivial(order);
  return {order == 2 ? "sign" : "cyclic-sign", order,
          [](int g, const mpq_class& x) { return g % 2 == 0 ? x : mpq_class(-x); }};
}

GroupAction affine_flip() {
  return {"affine-flip", 2, [](int g, const mpq_class& x) { return g % 2 == 0 ? x : mpq_class(1 - x); }};
}

GroupAction by_name(const std::string& name, int order) {
  if (name == "trivial") return trivial(order);
  if (name == "sign") {
    if (order != 2) return cyclic_unit(order, -1);
    return sign();
  }
  if (name == "affine-flip") return affine_flip();
  throw InputError("unknown group action '" + name + "'");
}

}  // namespace actions

GroupRingElement::GroupRingElement(int order) : order_(order) {
  if (order < 1) throw InputError("group order must be positive");
}

GroupRingElement GroupRingElement::basis(int order, int g, const mpq_class& coeff) {
  GroupRingElement e(order);
  e.set(g, coeff);
  return e;
}

mpq_class GroupRingElement::coefficient(int g) const {
  const auto it = coeffs_.find(g);
  return it == coeffs_.end() ? mpq_class(0) : it->second;
}

void GroupRingElement::set(int g, const mpq_class& v) {
  if (g < 0 || g >= order_) throw InputError("group element out of range");
  if (v == 0)
    coeffs_.erase(g);
  else
    coeffs_[g] = v;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  if (o.order_ != order_) throw InputError("group ring elements over different groups");
  GroupRingElement r = *this;
  for (const auto& [g, v] : o.coeffs_) r.set(g, r.coefficient(g) + v);
  return r;
}

GroupRingElement GroupRingElement::operator-() const { return scaled(-1); }

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  if (o.order_ != order_) throw InputError("group ring elements over different groups");
  GroupRingElement r(order_);
  for (const auto& [g, v] : coeffs_)
    for (const auto& [h, w] : o.coeffs_) {
      const int k = (g + h) % order_;
      r.set(k, r.coefficient(k) + v * w);
    }
  return r;
}

GroupRingElement GroupRingElement::scaled(const mpq_class& q) const {
  GroupRingElement r(order_);
  for (const auto& [g, v] : coeffs_) r.set(g, v * q);
  return r;
}

std::string GroupRingElement::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, v] : coeffs_) {
    if (!first) os << " + ";
    os << format_rational(v) << "*g" << g;
    first = false;
  }
  return os.str();
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  try {
    if (s.find_first_of(".eE") != std::string::npos) {
      std::size_t pos = 0;
      const double d = std::stod(s, &pos);
      if (pos != s.size()) throw InputError("bad rational literal '" + s + "'");
      return mpq_class(d);
    }
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational literal '" + s + "'");
  }
}

std::string format_rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_str(10);
}

}  // namespace ymt
