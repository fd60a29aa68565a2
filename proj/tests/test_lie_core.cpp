#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "ymt/io.hpp"

using namespace ymt;

TEST_SUITE("lie_core") {

TEST_CASE("catalog algebras satisfy Jacobi and match their representations") {
  for (const char* n : {"u1", "u1^3", "su2", "so3", "so2", "su2+u1"}) {
    const auto a = catalog::by_name(n);
    CHECK(a->jacobi_residual() == 0.0);
    Rng rng(3);
    const Vec x = random_algebra_vector(*a, rng), y = random_algebra_vector(*a, rng);
    const CMat lhs = a->to_matrix(x) * a->to_matrix(y) - a->to_matrix(y) * a->to_matrix(x);
    CHECK((lhs - a->to_matrix(bracket(*a, x, y))).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(catalog::by_name("sl3"), InputError);
}

TEST_CASE("Killing forms") {
  // su(2) with [e_i, e_j] = eps_ijk e_k: ad_e1 has eigenvalues 0, +-i, so K(e1, e1) = -2
  CHECK((killing_form(catalog::su2()).matrix + 2.0 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((killing_form(catalog::so3()).matrix + 2.0 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(killing_form(catalog::u1k(2)).matrix.isZero(0.0));
  const auto k = killing_form(catalog::su2_u1()).matrix;
  CHECK(k(3, 3) == 0.0);
  CHECK(k(0, 0) == -2.0);
}

TEST_CASE("invariant form bases against the exact rational oracle") {
  for (const char* n : {"u1", "u1^2", "u1^3", "su2", "so3", "so2", "su2+u1"}) {
    const auto a = catalog::by_name(n);
    const auto basis = invariant_form_basis(a);
    CHECK(static_cast<int>(basis.size()) == fixture::invariant_dim_oracle(*a));
    Rng rng(5);
    for (const auto& b : basis) {
      const Vec z = random_algebra_vector(*a, rng), x = random_algebra_vector(*a, rng), y = random_algebra_vector(*a, rng);
      CHECK(ad_invariance_residual(b, z, x, y) < 1e-12);
    }
  }
  CHECK(invariant_form_basis(catalog::u1k(3)).size() == 9);
}

TEST_CASE("a generic form is not ad-invariant") {
  const auto a = catalog::su2();
  Rng rng(9);
  BilinearForm b{a, Mat::Random(3, 3)};
  const Vec z = random_algebra_vector(*a, rng), x = random_algebra_vector(*a, rng), y = random_algebra_vector(*a, rng);
  CHECK(ad_invariance_residual(b, z, x, y) > 1e-6);
}

TEST_CASE("exp and principal log") {
  const auto a = catalog::su2();
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const Vec x = random_algebra_vector(*a, rng, 0.8);
    const CMat u = expm(a->to_matrix(x));
    CHECK(group_residual(*a, u) < 1e-13);
    CHECK((a->from_matrix(logm_unitary(u)) - x).cwiseAbs().maxCoeff() < 1e-12);
  }
  // rotation by pi in SO(3) sits on the cut locus
  Vec x = Vec::Zero(3);
  x(2) = std::numbers::pi;
  CHECK_THROWS_AS(logm_unitary(expm(catalog::so3()->to_matrix(x))), SingularityError);
}

TEST_CASE("adjoint matrices are Killing-orthogonal") {
  const auto a = catalog::su2();
  Rng rng(4);
  const CMat g = random_group_element(*a, rng);
  const Mat ad = a->adjoint_matrix(g);
  const Mat k = killing_form(a).matrix;
  CHECK((ad.transpose() * k * ad - k).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("embeddings") {
  for (const auto& e : {catalog::so2_in_so3(), catalog::u1_in_su2(), catalog::identity(catalog::su2())}) {
    CHECK_NOTHROW(e.validate());
    Rng rng(2);
    const Vec x = random_algebra_vector(*e.source, rng);
    const CMat lhs = e.group_map(expm(e.source->to_matrix(x)));
    const CMat rhs = expm(e.target->to_matrix(embed_algebra(e, x)));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
  auto bad = catalog::so2_in_so3();
  bad.algebra_map.setZero();
  CHECK_THROWS_AS(bad.validate(), VerificationError);
}

TEST_CASE("structure-constant ingestion") {
  const auto j = io::json::parse(R"({"name": "e3", "dim": 3, "c": [[0,1,2,1],[1,2,0,1],[2,0,1,1],[1,0,2,-1],[2,1,0,-1],[0,2,1,-1]]})");
  const auto a = io::algebra_from_json(j);
  CHECK(a->dim() == 3);
  CHECK(invariant_form_basis(a).size() == 1);
  CHECK((killing_form(a).matrix + 2.0 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  const auto asym = io::json::parse(R"({"name": "bad", "dim": 2, "c": [[0,1,0,1]]})");
  CHECK_THROWS_AS(io::algebra_from_json(asym), InputError);
  const auto extra = io::json::parse(R"({"name": "x", "dim": 1, "c": [], "basis": 1})");
  CHECK_THROWS_AS(io::algebra_from_json(extra), InputError);
}

}
