#include <doctest.h>

#include "support.hpp"
#include "ymt/kernels.hpp"
#include "ymt/theory.hpp"

using namespace ymt;
using fixture::lattice;

namespace {

struct ThreadCap {
  int saved = kernels::omp::max_threads();
  explicit ThreadCap(int n) { kernels::omp::set_max_threads(n); }
  ~ThreadCap() { kernels::omp::set_max_threads(saved); }
};

bool bitwise(const Mat& a, const Mat& b) { return a.rows() == b.rows() && a.cols() == b.cols() && a == b; }

}  // namespace

TEST_SUITE("lattice_fields") {

TEST_CASE("lattice indexing") {
  const Lattice lat({3, 4, 2});
  CHECK(lat.num_vertices() == 24);
  CHECK(lat.num_edges() == 72);
  CHECK(lat.num_planes() == 3);
  CHECK(lat.num_plaquettes() == 72);
  const std::vector<int> x{2, 1, 0};
  const auto v = lat.vertex(x);
  CHECK(v == 2 + 3 * 1);
  CHECK(lat.coords(lat.shift(v, 0)) == std::vector<int>{0, 1, 0});
  CHECK(lat.coords(lat.shift(v, 1, -2)) == std::vector<int>{2, 3, 0});
  CHECK(lat.edge_target(lat.edge(v, 2)) == lat.shift(v, 2));
  const auto b = lat.plaquette_boundary(lat.plaquette(v, lat.plane(0, 1)));
  CHECK(b[0].edge == lat.edge(v, 0));
  CHECK(b[1].edge == lat.edge(lat.shift(v, 0), 1));
  CHECK(b[2].sign == -1);
  CHECK(b[3].edge == lat.edge(v, 1));
  CHECK_THROWS_AS(Lattice({3, 0}), InputError);
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  ThreadCap cap(4);
  Rng rng(17);
  const auto lat = lattice({4, 3, 3, 2});
  for (const char* name : {"su2", "so3", "su2+u1"}) {
    const auto alg = catalog::by_name(name);
    const auto d = random_cochain1(lat, alg, rng, 0.7);
    CHECK(bitwise(coboundary(d, Exec::serial).values, coboundary(d, Exec::parallel).values));
    CHECK(bitwise(cup_bracket(d, Exec::serial).values, cup_bracket(d, Exec::parallel).values));
    const auto u = exp_links(d);
    CHECK(bitwise(plaquette_curvature(u, Exec::serial).values, plaquette_curvature(u, Exec::parallel).values));
    const auto g = random_gauge(lat, alg, rng);
    const auto gs = gauge_transform_links(u, g, Exec::serial);
    const auto gp = gauge_transform_links(u, g, Exec::parallel);
    bool same = true;
    for (std::size_t e = 0; e < gs.links.size(); ++e) same = same && gs.links[e] == gp.links[e];
    CHECK(same);
    const auto t = fixture::killing_theory(lat, alg);
    const auto f = curvature(d);
    CHECK(pairing_density(t, f, f, Exec::serial) == pairing_density(t, f, f, Exec::parallel));
    CHECK(ymt_action(t, d, Exec::serial) == ymt_action(t, d, Exec::parallel));
    CHECK(topological_integral(f, Exec::serial) == topological_integral(f, Exec::parallel));
  }
}

TEST_CASE("thread count does not change results") {
  Rng rng(5);
  const auto lat = lattice({4, 4, 4, 4});
  const auto su2 = catalog::su2();
  const auto t = fixture::killing_theory(lat, su2);
  const auto u = random_links(lat, su2, rng, 0.5);
  double ref = 0.0;
  {
    ThreadCap cap(1);
    ref = ymt_action(t, u);
  }
  for (int n : {2, 3, 7}) {
    ThreadCap cap(n);
    CHECK(ymt_action(t, u) == ref);
  }
}

TEST_CASE("coboundary squares to zero") {
  Rng rng(2);
  const auto lat = lattice({3, 3, 3, 3});
  const auto alg = catalog::su2();
  const auto d = random_cochain1(lat, alg, rng);
  CHECK(coboundary2(coboundary(d)).cwiseAbs().maxCoeff() < 1e-13);
  const auto phi = random_section(lat, alg, rng);
  CHECK(coboundary(coboundary0(phi)).values.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("cup bracket vanishes exactly for abelian algebras") {
  Rng rng(8);
  const auto lat = lattice({3, 3, 3});
  for (const char* name : {"u1", "u1^2", "so2"}) {
    const auto d = random_cochain1(lat, catalog::by_name(name), rng);
    CHECK(cup_bracket(d).values.isZero(0.0));
  }
}

TEST_CASE("single-edge excitation") {
  const auto lat = lattice({3, 3});
  const auto su2 = catalog::su2();
  auto d = AlgebraCochain1::zero(lat, su2);
  d.values(0, static_cast<Eigen::Index>(lat->edge(0, 0))) = 0.3;
  const auto f = plaquette_curvature(exp_links(d));
  // e_0(0) bounds (0; 01) as the first edge and (x - e_1; 01) as the reversed third edge
  CHECK(f.values(0, static_cast<Eigen::Index>(lat->plaquette(0, 0))) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(f.values(0, static_cast<Eigen::Index>(lat->plaquette(lat->shift(0, 1, -1), 0))) ==
        doctest::Approx(-0.3).epsilon(1e-14));
  CHECK((coboundary(d).values - f.values).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("plaquette curvature is gauge covariant") {
  Rng rng(12);
  const auto lat = lattice({3, 3, 3});
  for (const char* name : {"su2", "so3"}) {
    const auto alg = catalog::by_name(name);
    const auto u = random_links(lat, alg, rng, 0.5);
    const auto g = random_gauge(lat, alg, rng);
    const auto lhs = plaquette_curvature(gauge_transform_links(u, g));
    const auto rhs = adjoint_transform(plaquette_curvature(u), g);
    CHECK((lhs.values - rhs.values).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("curvature of a closed field matches the holonomy to third order") {
  Rng rng(3);
  const auto lat = lattice({3, 3, 3, 3});
  const auto su2 = catalog::su2();
  const auto a = fixture::closed_cochain(lat, su2, rng);
  CHECK(coboundary(a).values.cwiseAbs().maxCoeff() < 1e-12);
  auto err = [&](double eps) {
    auto d = a;
    d.values *= eps;
    return (plaquette_curvature(exp_links(d)).values - curvature(d).values).cwiseAbs().maxCoeff();
  };
  CHECK(std::log10(err(1e-2) / err(1e-3)) > 2.9);
}

TEST_CASE("exp and log of link fields") {
  Rng rng(6);
  const auto lat = lattice({2, 3});
  const auto so3 = catalog::so3();
  const auto d = random_cochain1(lat, so3, rng, 0.6);
  const auto u = exp_links(d);
  CHECK(u.group_residual() < 1e-13);
  CHECK((log_links(u).values - d.values).cwiseAbs().maxCoeff() < 1e-12);
  const auto g = random_gauge(lat, so3, rng);
  const auto back = gauge_transform_links(gauge_transform_links(u, g), g.inverse());
  for (std::size_t e = 0; e < u.links.size(); ++e) CHECK((back.links[e] - u.links[e]).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("mismatched inputs are rejected") {
  Rng rng(1);
  const auto a = lattice({2, 2});
  const auto b = lattice({3, 3});
  const auto u = random_links(a, catalog::su2(), rng, 0.3);
  CHECK_THROWS_AS(gauge_transform_links(u, random_gauge(b, catalog::su2(), rng)), InputError);
  CHECK_THROWS_AS(gauge_transform_links(u, random_gauge(a, catalog::so3(), rng)), InputError);
}

}
