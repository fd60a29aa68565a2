#include "ymt/lattice.hpp"

#include <string>

#include "ymt/error.hpp"

namespace ymt {

Lattice::Lattice(std::vector<int> extents, double volume_weight)
    : n_(static_cast<int>(extents.size())), extents_(std::move(extents)), volume_weight_(volume_weight) {
  if (n_ < 2) throw InputError("lattice dimension must be at least 2");
  if (!(volume_weight_ > 0.0)) throw InputError("volume weight must be positive");
  volume_ = 1;
  for (int e : extents_) {
    if (e < 1) throw InputError("lattice extents must be positive");
    volume_ *= static_cast<std::size_t>(e);
  }
  plane_index_.assign(static_cast<std::size_t>(n_ * n_), -1);
  for (int mu = 0; mu < n_; ++mu)
    for (int nu = mu + 1; nu < n_; ++nu) {
      plane_index_[mu * n_ + nu] = static_cast<int>(planes_.size());
      planes_.emplace_back(mu, nu);
    }
  fwd_.resize(volume_ * n_);
  bwd_.resize(volume_ * n_);
  std::vector<int> x(n_, 0);
  for (std::size_t v = 0; v < volume_; ++v) {
    x = coords(v);
    for (int mu = 0; mu < n_; ++mu) {
      auto y = x;
      y[mu] = (x[mu] + 1) % extents_[mu];
      fwd_[v * n_ + mu] = vertex(y);
      y[mu] = (x[mu] - 1 + extents_[mu]) % extents_[mu];
      bwd_[v * n_ + mu] = vertex(y);
    }
  }
}

std::vector<int> Lattice::coords(std::size_t v) const {
  std::vector<int> x(n_);
  for (int mu = 0; mu < n_; ++mu) {
    x[mu] = static_cast<int>(v % extents_[mu]);
    v /= extents_[mu];
  }
  return x;
}

std::size_t Lattice::vertex(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != n_) throw InputError("coordinate rank mismatch");
  std::size_t v = 0;
  for (int mu = n_ - 1; mu >= 0; --mu) {
    const int e = extents_[mu];
    v = v * e + static_cast<std::size_t>(((coords[mu] % e) + e) % e);
  }
  return v;
}

std::size_t Lattice::shift(std::size_t v, int mu, int steps) const {
  while (steps > 0) {
    v = fwd_[v * n_ + mu];
    --steps;
  }
  while (steps < 0) {
    v = bwd_[v * n_ + mu];
    ++steps;
  }
  return v;
}

int Lattice::plane(int mu, int nu) const {
  if (mu < 0 || nu < 0 || mu >= n_ || nu >= n_ || mu >= nu)
    throw InputError("plane requires 0 <= mu < nu < dim");
  return plane_index_[mu * n_ + nu];
}

std::array<EdgeRef, 4> Lattice::plaquette_boundary(std::size_t p) const {
  const std::size_t x = plaquette_base(p);
  const auto [mu, nu] = planes_[plaquette_plane(p)];
  return {EdgeRef{edge(x, mu), +1}, EdgeRef{edge(fwd_[x * n_ + mu], nu), +1},
          EdgeRef{edge(fwd_[x * n_ + nu], mu), -1}, EdgeRef{edge(x, nu), -1}};
}

}  // namespace ymt
