#pragma once

// Data-parallel lattice kernels. `serial` is the reference implementation;
// `omp` is the OpenMP version and must agree with it bit for bit. Per-cell
// outputs are written independently and every reduction is performed by
// ordered_sum in lexicographic cell order.

#include <cstddef>
#include <vector>

#include "ymt/lattice.hpp"
#include "ymt/lie_core.hpp"

namespace ymt::kernels {

/// Left-to-right sum.
double ordered_sum(const Vec& v);

/// Pointwise pairing data: form2 over planes at a base vertex and one
/// algebra form per vertex (size 1 means position-independent).
struct PairingData {
  Mat form2;
  std::vector<Mat> algebra_forms;
};

/// Return value of plaquette_log: index of the first singular plaquette or -1.
using SingularIndex = std::ptrdiff_t;

namespace serial {
void coboundary(const Lattice& lat, const Mat& edges, Mat& out);
void cup_bracket(const Lattice& lat, const LieAlgebra& alg, const Mat& edges, Mat& out);
SingularIndex plaquette_log(const Lattice& lat, const LieAlgebra& alg, const std::vector<CMat>& links, Mat& out);
void gauge_links(const Lattice& lat, const std::vector<CMat>& links, const std::vector<CMat>& g,
                 std::vector<CMat>& out);
void pairing_density(const Lattice& lat, const PairingData& p, const Mat& w1, const Mat& w2, Vec& out);
void topological_density(const Lattice& lat, const Mat& trace_form, const Mat& f, Vec& out);
}  // namespace serial

namespace omp {
void coboundary(const Lattice& lat, const Mat& edges, Mat& out);
void cup_bracket(const Lattice& lat, const LieAlgebra& alg, const Mat& edges, Mat& out);
SingularIndex plaquette_log(const Lattice& lat, const LieAlgebra& alg, const std::vector<CMat>& links, Mat& out);
void gauge_links(const Lattice& lat, const std::vector<CMat>& links, const std::vector<CMat>& g,
                 std::vector<CMat>& out);
void pairing_density(const Lattice& lat, const PairingData& p, const Mat& w1, const Mat& w2, Vec& out);
void topological_density(const Lattice& lat, const Mat& trace_form, const Mat& f, Vec& out);

/// Threads used by the parallel kernels (honours YMT_THREADS when set via set_max_threads).
int max_threads();
void set_max_threads(int n);
}  // namespace omp

/// Signed (I, J) splittings of the 4-cell axes used by the cubical cup product
/// of two 2-cochains: value = sum sign * a(x; I) . b(x + e_I; J).
struct CupTerm {
  int plane_front;
  int plane_back;
  int shift_axes[2];
  int sign;
};
std::vector<CupTerm> cup22_terms(const Lattice& lat);

}  // namespace ymt::kernels
