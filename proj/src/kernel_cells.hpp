#pragma once

// Per-cell bodies shared by the serial and OpenMP kernels.

#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ymt/kernels.hpp"

namespace ymt::kernels::detail {

inline void coboundary_cell(const Lattice& lat, const Mat& edges, Mat& out, std::size_t p) {
  const auto b = lat.plaquette_boundary(p);
  const auto c = static_cast<Eigen::Index>(p);
  out.col(c) = edges.col(static_cast<Eigen::Index>(b[0].edge)) + edges.col(static_cast<Eigen::Index>(b[1].edge)) -
               edges.col(static_cast<Eigen::Index>(b[2].edge)) - edges.col(static_cast<Eigen::Index>(b[3].edge));
}

// out += w * [x, y]
inline void accumulate_bracket(const LieAlgebra& alg, const double* x, const double* y, double w, double* out) {
  const int l = alg.dim();
  for (int i = 0; i < l; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < l; ++j) {
      if (y[j] == 0.0) continue;
      const double s = w * x[i] * y[j];
      for (int k = 0; k < l; ++k) {
        const double c = alg.c(i, j, k);
        if (c != 0.0) out[k] += s * c;
      }
    }
  }
}

inline void cup_bracket_cell(const Lattice& lat, const LieAlgebra& alg, const Mat& edges, Mat& out, std::size_t p) {
  const auto b = lat.plaquette_boundary(p);
  // b[0] = e_mu(x), b[1] = e_nu(x+mu), b[2] = e_mu(x+nu), b[3] = e_nu(x)
  const auto c = static_cast<Eigen::Index>(p);
  out.col(c).setZero();
  double* o = out.col(c).data();
  accumulate_bracket(alg, edges.col(static_cast<Eigen::Index>(b[0].edge)).data(),
                     edges.col(static_cast<Eigen::Index>(b[1].edge)).data(), 0.5, o);
  accumulate_bracket(alg, edges.col(static_cast<Eigen::Index>(b[3].edge)).data(),
                     edges.col(static_cast<Eigen::Index>(b[2].edge)).data(), -0.5, o);
}

// Returns false when the holonomy is at the log branch cut.
inline bool plaquette_log_cell(const Lattice& lat, const LieAlgebra& alg, const std::vector<CMat>& links, Mat& out,
                               std::size_t p) {
  const auto b = lat.plaquette_boundary(p);
  const CMat h = links[b[0].edge] * links[b[1].edge] * links[b[2].edge].adjoint() * links[b[3].edge].adjoint();
  Eigen::ComplexSchur<CMat> schur(h);
  const auto& t = schur.matrixT();
  const auto& q = schur.matrixU();
  CMat d = CMat::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const double phase = std::arg(t(i, i));
    if (std::abs(phase) >= std::numbers::pi - 1e-12) return false;
    d(i, i) = std::complex<double>(std::log(std::abs(t(i, i))), phase);
  }
  out.col(static_cast<Eigen::Index>(p)) = alg.from_matrix(q * d * q.adjoint());
  return true;
}

inline void gauge_link_cell(const Lattice& lat, const std::vector<CMat>& links, const std::vector<CMat>& g,
                            std::vector<CMat>& out, std::size_t e) {
  out[e] = g[lat.edge_source(e)] * links[e] * g[lat.edge_target(e)].adjoint();
}

inline double pairing_cell(const Lattice& lat, const PairingData& pd, const Mat& w1, const Mat& w2, std::size_t x) {
  const int np = lat.num_planes();
  const Mat& form = pd.algebra_forms.size() == 1 ? pd.algebra_forms.front() : pd.algebra_forms[x];
  double s = 0.0;
  for (int a = 0; a < np; ++a) {
    const auto ca = static_cast<Eigen::Index>(lat.plaquette(x, a));
    for (int b = 0; b < np; ++b) {
      const double f = pd.form2(a, b);
      if (f == 0.0) continue;
      const auto cb = static_cast<Eigen::Index>(lat.plaquette(x, b));
      s += f * w1.col(ca).dot(form * w2.col(cb));
    }
  }
  return s;
}

inline double topological_cell(const Lattice& lat, const std::vector<CupTerm>& terms, const Mat& k, const Mat& f,
                               std::size_t x) {
  double s = 0.0;
  for (const auto& t : terms) {
    const std::size_t y = lat.shift(lat.shift(x, t.shift_axes[0]), t.shift_axes[1]);
    const auto front = static_cast<Eigen::Index>(lat.plaquette(x, t.plane_front));
    const auto back = static_cast<Eigen::Index>(lat.plaquette(y, t.plane_back));
    s += t.sign * f.col(front).dot(k * f.col(back));
  }
  return s;
}

}  // namespace ymt::kernels::detail
