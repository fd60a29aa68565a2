#include "ymt/domain.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "ymt/error.hpp"

namespace ymt {

Config Config::transformed(const GaugeTransform& g) const {
  Config out;
  out.links = gauge_transform_links(links, g, Exec::serial);
  if (phi) out.phi = adjoint_transform(*phi, g);
  if (b) out.b = adjoint_transform(*b, g);
  return out;
}

bool Config::is_zero() const {
  const auto n = links.algebra->rep_size();
  const CMat id = CMat::Identity(n, n);
  for (const auto& u : links.links)
    if (u != id) return false;
  if (phi && !phi->values.isZero(0.0)) return false;
  if (b && !b->values.isZero(0.0)) return false;
  return true;
}

double config_distance(const Config& a, const Config& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!(*a.links.lattice == *b.links.lattice) || a.links.algebra->name() != b.links.algebra->name()) return inf;
  if (a.phi.has_value() != b.phi.has_value() || a.b.has_value() != b.b.has_value()) return inf;
  double d = 0.0;
  for (std::size_t e = 0; e < a.links.links.size(); ++e) {
    d = std::max(d, (a.links.links[e] - b.links.links[e]).cwiseAbs().maxCoeff());
    if (d > 1.0) return d;
  }
  if (a.phi) d = std::max(d, (a.phi->values - b.phi->values).cwiseAbs().maxCoeff());
  if (a.b) d = std::max(d, (a.b->values - b.b->values).cwiseAbs().maxCoeff());
  return d;
}

std::optional<std::size_t> SampledDomain::find(const Config& c) const {
  for (std::size_t i = 0; i < configs_.size(); ++i)
    if (config_distance(configs_[i], c) <= match_tol) return i;
  return std::nullopt;
}

std::optional<std::size_t> SampledDomain::zero_index() const {
  for (std::size_t i = 0; i < configs_.size(); ++i)
    if (configs_[i].is_zero()) return i;
  return std::nullopt;
}

void SampledDomain::build_action() {
  action_.assign(generators_.size(), std::vector<std::size_t>(configs_.size()));
  for (std::size_t g = 0; g < generators_.size(); ++g)
    for (std::size_t i = 0; i < configs_.size(); ++i) {
      const auto j = find(configs_[i].transformed(generators_[g]));
      if (!j) throw InputError("sampled domain is not closed: generator " + std::to_string(g) + " maps configuration " +
                               std::to_string(i) + " outside the set");
      action_[g][i] = *j;
    }
}

SampledDomain SampledDomain::closure(const std::vector<Config>& seeds, const std::vector<unsigned>& seed_tags,
                                     std::vector<GaugeTransform> generators) {
  if (seeds.size() != seed_tags.size()) throw InputError("closure: one tag word per seed");
  SampledDomain d;
  d.generators_ = std::move(generators);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const unsigned t = seed_tags[s] | tag_extended;
    if (const auto j = d.find(seeds[s])) {
      d.tags_[*j] |= t;
      continue;
    }
    d.configs_.push_back(seeds[s]);
    d.tags_.push_back(t);
    queue.push_back(d.configs_.size() - 1);
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      for (const auto& g : d.generators_) {
        auto c = d.configs_[i].transformed(g);
        if (const auto j = d.find(c)) {
          d.tags_[*j] |= t;
          continue;
        }
        d.configs_.push_back(std::move(c));
        d.tags_.push_back(t);
        queue.push_back(d.configs_.size() - 1);
      }
    }
  }
  d.build_action();
  return d;
}

SampledDomain SampledDomain::from_configs(std::vector<Config> configs, std::vector<unsigned> tags,
                                          std::vector<GaugeTransform> generators) {
  if (configs.size() != tags.size()) throw InputError("sampled domain: one tag word per configuration");
  SampledDomain d;
  d.configs_ = std::move(configs);
  d.tags_ = std::move(tags);
  for (auto& t : d.tags_) t |= tag_extended;
  d.generators_ = std::move(generators);
  d.build_action();
  return d;
}

std::vector<std::size_t> SampledDomain::tagged(Tag t) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tags_.size(); ++i)
    if (tags_[i] & t) out.push_back(i);
  return out;
}

bool SampledDomain::is_closed(const std::vector<std::size_t>& subset) const {
  std::vector<char> in(configs_.size(), 0);
  for (auto i : subset) in.at(i) = 1;
  for (const auto& row : action_)
    for (auto i : subset)
      if (!in[row[i]]) return false;
  return true;
}

std::vector<std::size_t> SampledDomain::orbit_representatives() const {
  std::vector<std::size_t> rep(configs_.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t s = 0; s < configs_.size(); ++s) {
    if (rep[s] != std::numeric_limits<std::size_t>::max()) continue;
    std::deque<std::size_t> q{s};
    rep[s] = s;
    while (!q.empty()) {
      const auto i = q.front();
      q.pop_front();
      for (const auto& row : action_)
        if (rep[row[i]] == std::numeric_limits<std::size_t>::max()) {
          rep[row[i]] = s;
          q.push_back(row[i]);
        }
    }
  }
  return rep;
}

SampledDomain SampledDomain::subset(const std::vector<std::size_t>& indices) const {
  if (!is_closed(indices)) throw InputError("subdomain is not closed under the gauge generators");
  std::vector<std::size_t> pos(configs_.size(), std::numeric_limits<std::size_t>::max());
  SampledDomain d;
  d.generators_ = generators_;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0 && indices[k] <= indices[k - 1]) throw InputError("subdomain indices must be strictly ascending");
    pos[indices[k]] = k;
    d.configs_.push_back(configs_[indices[k]]);
    d.tags_.push_back(tags_[indices[k]]);
  }
  d.action_.assign(generators_.size(), std::vector<std::size_t>(indices.size()));
  for (std::size_t g = 0; g < generators_.size(); ++g)
    for (std::size_t k = 0; k < indices.size(); ++k) d.action_[g][k] = pos[action_[g][indices[k]]];
  return d;
}

SampledDomain SampledDomain::with_tags(std::vector<unsigned> tags) const {
  if (tags.size() != configs_.size()) throw InputError("sampled domain: one tag word per configuration");
  SampledDomain d = *this;
  d.tags_ = std::move(tags);
  for (auto& t : d.tags_) t |= tag_extended;
  return d;
}

bool SampledDomain::same_generators(const SampledDomain& o) const {
  if (generators_.size() != o.generators_.size()) return false;
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const auto& a = generators_[g].values;
    const auto& b = o.generators_[g].values;
    if (a.size() != b.size()) return false;
    for (std::size_t x = 0; x < a.size(); ++x)
      if (a[x] != b[x]) return false;
  }
  return true;
}

namespace generators {

namespace {

std::vector<GaugeTransform> constants(const LatticePtr& lat, const AlgebraPtr& alg, const std::vector<CMat>& ms) {
  std::vector<GaugeTransform> out;
  for (const auto& m : ms) out.push_back(GaugeTransform::constant(lat, alg, m));
  return out;
}

CMat real3(std::initializer_list<double> v) {
  CMat m(3, 3);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

}  // namespace

std::vector<GaugeTransform> quaternion(LatticePtr lat, AlgebraPtr su2) {
  const std::complex<double> i(0, 1);
  CMat s1(2, 2), s3(2, 2);
  s1 << 0, i, i, 0;
  s3 << i, 0, 0, -i;
  return constants(lat, su2, {s1, s3});
}

std::vector<GaugeTransform> cube(LatticePtr lat, AlgebraPtr so3) {
  return constants(lat, so3, {real3({0, -1, 0, 1, 0, 0, 0, 0, 1}), real3({1, 0, 0, 0, 0, -1, 0, 1, 0})});
}

std::vector<GaugeTransform> so2_normalizer(LatticePtr lat, AlgebraPtr so3) {
  return constants(lat, so3, {real3({0, -1, 0, 1, 0, 0, 0, 0, 1}), real3({1, 0, 0, 0, -1, 0, 0, 0, -1})});
}

std::vector<GaugeTransform> standard(LatticePtr lat, AlgebraPtr alg) {
  if (alg->name() == "su2") return quaternion(std::move(lat), std::move(alg));
  if (alg->name() == "so3") return cube(std::move(lat), std::move(alg));
  if (alg->name() == "su2+u1") {
    const std::complex<double> i(0, 1);
    CMat s1 = CMat::Zero(3, 3), s3 = CMat::Zero(3, 3);
    s1(0, 1) = i;
    s1(1, 0) = i;
    s1(2, 2) = 1;
    s3(0, 0) = i;
    s3(1, 1) = -i;
    s3(2, 2) = 1;
    return constants(lat, alg, {s1, s3});
  }
  return {};
}

}  // namespace generators

namespace {

std::size_t translated_edge(const Lattice& lat, std::size_t e, int axis) {
  const int n = lat.dim();
  const auto v = e / static_cast<std::size_t>(n);
  const int mu = static_cast<int>(e % static_cast<std::size_t>(n));
  return lat.edge(lat.shift(v, axis), mu);
}

}  // namespace

Config translate(const Config& c, int axis) {
  const auto& lat = *c.links.lattice;
  if (axis < 0 || axis >= lat.dim()) throw InputError("translate: axis out of range");
  Config out = c;
  for (std::size_t e = 0; e < lat.num_edges(); ++e) out.links.links[translated_edge(lat, e, axis)] = c.links.links[e];
  if (c.phi)
    for (std::size_t v = 0; v < lat.num_vertices(); ++v)
      out.phi->values.col(static_cast<Eigen::Index>(lat.shift(v, axis))) = c.phi->values.col(static_cast<Eigen::Index>(v));
  if (c.b)
    for (std::size_t p = 0; p < lat.num_plaquettes(); ++p) {
      const auto q = lat.plaquette(lat.shift(lat.plaquette_base(p), axis), lat.plaquette_plane(p));
      out.b->values.col(static_cast<Eigen::Index>(q)) = c.b->values.col(static_cast<Eigen::Index>(p));
    }
  return out;
}

Config relabel(const Config& c, LatticePtr lat) {
  if (lat->extents() != c.links.lattice->extents()) throw InputError("relabel: lattice extents differ");
  Config out = c;
  out.links.lattice = lat;
  if (out.phi) out.phi->lattice = lat;
  if (out.b) out.b->lattice = lat;
  return out;
}

}  // namespace ymt
