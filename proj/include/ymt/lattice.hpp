#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace ymt {

/// Oriented reference to a positive edge: sign -1 means traversed backwards.
struct EdgeRef {
  std::size_t edge;
  int sign;
};

/// Periodic hypercubic lattice viewed as a cubical cell complex.
///
/// Vertices are numbered lexicographically with the first axis fastest.
/// Positive edges are (x, mu) -> index x*n + mu. Plaquettes are (x, plane)
/// with planes mu < nu enumerated lexicographically; a plaquette's boundary
/// is e_mu(x), e_nu(x+mu), e_mu(x+nu)^-1, e_nu(x)^-1.
class Lattice {
 public:
  explicit Lattice(std::vector<int> extents, double volume_weight = 1.0);

  int dim() const { return n_; }
  const std::vector<int>& extents() const { return extents_; }
  double volume_weight() const { return volume_weight_; }

  std::size_t num_vertices() const { return volume_; }
  std::size_t num_edges() const { return volume_ * n_; }
  int num_planes() const { return static_cast<int>(planes_.size()); }
  std::size_t num_plaquettes() const { return volume_ * planes_.size(); }

  std::vector<int> coords(std::size_t v) const;
  std::size_t vertex(std::span<const int> coords) const;
  /// Periodic neighbour x + steps * e_mu.
  std::size_t shift(std::size_t v, int mu, int steps = 1) const;

  std::size_t edge(std::size_t v, int mu) const { return v * n_ + mu; }
  std::size_t edge_source(std::size_t e) const { return e / n_; }
  std::size_t edge_target(std::size_t e) const { return fwd_[e]; }
  int edge_direction(std::size_t e) const { return static_cast<int>(e % n_); }

  int plane(int mu, int nu) const;
  std::pair<int, int> plane_axes(int p) const { return planes_[p]; }
  std::size_t plaquette(std::size_t v, int plane) const { return v * planes_.size() + plane; }
  std::size_t plaquette_base(std::size_t p) const { return p / planes_.size(); }
  int plaquette_plane(std::size_t p) const { return static_cast<int>(p % planes_.size()); }
  std::array<EdgeRef, 4> plaquette_boundary(std::size_t p) const;

  bool operator==(const Lattice& o) const {
    return extents_ == o.extents_ && volume_weight_ == o.volume_weight_;
  }

 private:
  int n_;
  std::vector<int> extents_;
  double volume_weight_;
  std::size_t volume_;
  std::vector<std::pair<int, int>> planes_;
  std::vector<int> plane_index_;
  std::vector<std::size_t> fwd_;  // (v, mu) -> v + e_mu
  std::vector<std::size_t> bwd_;  // (v, mu) -> v - e_mu
};

using LatticePtr = std::shared_ptr<const Lattice>;

}  // namespace ymt
