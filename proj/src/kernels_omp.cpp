#include <omp.h>

#include <algorithm>
#include <limits>

#include "kernel_cells.hpp"

namespace ymt::kernels::omp {

namespace {
int g_max_threads = 0;

int threads() { return g_max_threads > 0 ? g_max_threads : omp_get_max_threads(); }

std::ptrdiff_t signed_count(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }
}  // namespace

int max_threads() { return threads(); }
void set_max_threads(int n) { g_max_threads = std::max(0, n); }

void coboundary(const Lattice& lat, const Mat& edges, Mat& out) {
  out.resize(edges.rows(), static_cast<Eigen::Index>(lat.num_plaquettes()));
  const auto np = signed_count(lat.num_plaquettes());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (std::ptrdiff_t p = 0; p < np; ++p) detail::coboundary_cell(lat, edges, out, static_cast<std::size_t>(p));
}

void cup_bracket(const Lattice& lat, const LieAlgebra& alg, const Mat& edges, Mat& out) {
  out.resize(edges.rows(), static_cast<Eigen::Index>(lat.num_plaquettes()));
  const auto np = signed_count(lat.num_plaquettes());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (std::ptrdiff_t p = 0; p < np; ++p)
    detail::cup_bracket_cell(lat, alg, edges, out, static_cast<std::size_t>(p));
}

SingularIndex plaquette_log(const Lattice& lat, const LieAlgebra& alg, const std::vector<CMat>& links, Mat& out) {
  out.resize(alg.dim(), static_cast<Eigen::Index>(lat.num_plaquettes()));
  const auto np = signed_count(lat.num_plaquettes());
  std::ptrdiff_t first_bad = std::numeric_limits<std::ptrdiff_t>::max();
#pragma omp parallel for schedule(static) num_threads(threads()) reduction(min : first_bad)
  for (std::ptrdiff_t p = 0; p < np; ++p)
    if (!detail::plaquette_log_cell(lat, alg, links, out, static_cast<std::size_t>(p))) first_bad = std::min(first_bad, p);
  return first_bad == std::numeric_limits<std::ptrdiff_t>::max() ? -1 : first_bad;
}

void gauge_links(const Lattice& lat, const std::vector<CMat>& links, const std::vector<CMat>& g,
                 std::vector<CMat>& out) {
  out.resize(links.size());
  const auto ne = signed_count(lat.num_edges());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (std::ptrdiff_t e = 0; e < ne; ++e) detail::gauge_link_cell(lat, links, g, out, static_cast<std::size_t>(e));
}

void pairing_density(const Lattice& lat, const PairingData& p, const Mat& w1, const Mat& w2, Vec& out) {
  out.resize(static_cast<Eigen::Index>(lat.num_vertices()));
  const auto nv = signed_count(lat.num_vertices());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (std::ptrdiff_t x = 0; x < nv; ++x) out(x) = detail::pairing_cell(lat, p, w1, w2, static_cast<std::size_t>(x));
}

void topological_density(const Lattice& lat, const Mat& trace_form, const Mat& f, Vec& out) {
  const auto terms = cup22_terms(lat);
  out.resize(static_cast<Eigen::Index>(lat.num_vertices()));
  const auto nv = signed_count(lat.num_vertices());
#pragma omp parallel for schedule(static) num_threads(threads())
  for (std::ptrdiff_t x = 0; x < nv; ++x)
    out(x) = detail::topological_cell(lat, terms, trace_form, f, static_cast<std::size_t>(x));
}

}  // namespace ymt::kernels::omp
