#include "kernel_cells.hpp"

#include <algorithm>

namespace ymt::kernels {

double ordered_sum(const Vec& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v(i);
  return s;
}

std::vector<CupTerm> cup22_terms(const Lattice& lat) {
  // Splittings of (0,1,2,3) into an ordered front pair I and back pair J.
  std::vector<CupTerm> terms;
  const int n = lat.dim();
  if (n != 4) return terms;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      int rest[2], r = 0;
      for (int c = 0; c < 4; ++c)
        if (c != a && c != b) rest[r++] = c;
      const int perm[4] = {a, b, rest[0], rest[1]};
      int inversions = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (perm[i] > perm[j]) ++inversions;
      terms.push_back({lat.plane(a, b), lat.plane(rest[0], rest[1]), {a, b}, inversions % 2 == 0 ? 1 : -1});
    }
  return terms;
}

namespace serial {

void coboundary(const Lattice& lat, const Mat& edges, Mat& out) {
  out.resize(edges.rows(), static_cast<Eigen::Index>(lat.num_plaquettes()));
  for (std::size_t p = 0; p < lat.num_plaquettes(); ++p) detail::coboundary_cell(lat, edges, out, p);
}

void cup_bracket(const Lattice& lat, const LieAlgebra& alg, const Mat& edges, Mat& out) {
  out.resize(edges.rows(), static_cast<Eigen::Index>(lat.num_plaquettes()));
  for (std::size_t p = 0; p < lat.num_plaquettes(); ++p) detail::cup_bracket_cell(lat, alg, edges, out, p);
}

SingularIndex plaquette_log(const Lattice& lat, const LieAlgebra& alg, const std::vector<CMat>& links, Mat& out) {
  out.resize(alg.dim(), static_cast<Eigen::Index>(lat.num_plaquettes()));
  for (std::size_t p = 0; p < lat.num_plaquettes(); ++p)
    if (!detail::plaquette_log_cell(lat, alg, links, out, p)) return static_cast<SingularIndex>(p);
  return -1;
}

void gauge_links(const Lattice& lat, const std::vector<CMat>& links, const std::vector<CMat>& g,
                 std::vector<CMat>& out) {
  out.resize(links.size());
  for (std::size_t e = 0; e < lat.num_edges(); ++e) detail::gauge_link_cell(lat, links, g, out, e);
}

void pairing_density(const Lattice& lat, const PairingData& p, const Mat& w1, const Mat& w2, Vec& out) {
  out.resize(static_cast<Eigen::Index>(lat.num_vertices()));
  for (std::size_t x = 0; x < lat.num_vertices(); ++x)
    out(static_cast<Eigen::Index>(x)) = detail::pairing_cell(lat, p, w1, w2, x);
}

void topological_density(const Lattice& lat, const Mat& trace_form, const Mat& f, Vec& out) {
  const auto terms = cup22_terms(lat);
  out.resize(static_cast<Eigen::Index>(lat.num_vertices()));
  for (std::size_t x = 0; x < lat.num_vertices(); ++x)
    out(static_cast<Eigen::Index>(x)) = detail::topological_cell(lat, terms, trace_form, f, x);
}

}  // namespace serial
}  // namespace ymt::kernels
