#include <doctest.h>

#include "ymt/error.hpp"
#include "ymt/group_ring.hpp"

using namespace ymt;

TEST_SUITE("group_ring") {

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == mpq_class(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(parse_rational("0.25") == mpq_class(1, 4));
  CHECK(format_rational(mpq_class(-6, 4)) == "-3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("shipped actions") {
  std::vector<mpq_class> xs{0, 1, mpq_class(-3, 7), mpq_class(22, 5)};
  for (const auto& a : {actions::trivial(3), actions::sign(), actions::cyclic_unit(4, -1), actions::cyclic_unit(5, 1)}) {
    CHECK(a.is_additive(xs));
    CHECK(a.is_action(xs));
  }
  CHECK(actions::sign().apply(1, mpq_class(2, 3)) == mpq_class(-2, 3));
  CHECK_THROWS_AS(actions::cyclic_unit(3, -1), InputError);
  const auto flip = actions::affine_flip();
  CHECK(flip.is_action(xs));
  CHECK_FALSE(flip.is_additive(xs));
  CHECK_THROWS_AS(actions::by_name("rotation", 2), InputError);
}

TEST_CASE("ring axioms in Q[Z/4]") {
  auto x = GroupRingElement::basis(4, 1, mpq_class(2, 3)) + GroupRingElement::basis(4, 3, -1);
  auto y = GroupRingElement::basis(4, 2, 5) + GroupRingElement::unit(4);
  auto z = GroupRingElement::basis(4, 3, mpq_class(1, 7));
  CHECK((x * y) * z == x * (y * z));
  CHECK(x * y == y * x);
  CHECK(x * (y + z) == x * y + x * z);
  CHECK(x * GroupRingElement::unit(4) == x);
  CHECK((x - x).coefficients().empty());
  CHECK((GroupRingElement::basis(4, 3) * GroupRingElement::basis(4, 2)).coefficient(1) == 1);
  CHECK(x.scaled(0).coefficients().empty());
  CHECK_THROWS_AS(x + GroupRingElement::unit(2), InputError);
}

}
