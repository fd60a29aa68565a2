#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ymt/fields.hpp"

namespace ymt {

/// One sampled field configuration: a connection, optionally paired with a
/// Higgs-type section or a B field.
struct Config {
  LinkField links;
  std::optional<VertexSection> phi;
  std::optional<AlgebraCochain2> b;

  Config transformed(const GaugeTransform& g) const;
  /// Identity links with every optional component absent or zero.
  bool is_zero() const;
};

/// Max entrywise difference; infinity when the two configurations differ in shape.
double config_distance(const Config& a, const Config& b);

enum Tag : unsigned { tag_connection = 1u, tag_extended = 2u, tag_correction = 4u };

/// Finite set of configurations closed under a list of gauge generators. The
/// action table maps (generator, configuration) to a configuration index.
class SampledDomain {
 public:
  static constexpr double match_tol = 1e-10;

  /// Orbit closure of the seeds; tags are carried along orbits.
  static SampledDomain closure(const std::vector<Config>& seeds, const std::vector<unsigned>& seed_tags,
                               std::vector<GaugeTransform> generators);
  /// Takes configurations as given and checks closure; throws InputError if not closed.
  static SampledDomain from_configs(std::vector<Config> configs, std::vector<unsigned> tags,
                                    std::vector<GaugeTransform> generators);

  std::size_t size() const { return configs_.size(); }
  const Config& config(std::size_t i) const { return configs_.at(i); }
  const std::vector<Config>& configs() const { return configs_; }
  unsigned tags(std::size_t i) const { return tags_.at(i); }
  const std::vector<unsigned>& tag_list() const { return tags_; }
  bool has_tag(std::size_t i, Tag t) const { return (tags_.at(i) & t) != 0u; }
  std::vector<std::size_t> tagged(Tag t) const;
  const std::vector<GaugeTransform>& generators() const { return generators_; }
  std::size_t act(std::size_t generator, std::size_t config) const { return action_[generator][config]; }

  std::optional<std::size_t> find(const Config& c) const;
  std::optional<std::size_t> zero_index() const;
  /// Every generator maps the subset into itself.
  bool is_closed(const std::vector<std::size_t>& subset) const;
  /// Orbit representative (smallest index) for every configuration.
  std::vector<std::size_t> orbit_representatives() const;
  /// Subdomain on the given ascending indices; must be generator-closed.
  SampledDomain subset(const std::vector<std::size_t>& indices) const;
  SampledDomain with_tags(std::vector<unsigned> tags) const;
  /// Same generator list, compared entrywise.
  bool same_generators(const SampledDomain& o) const;

 private:
  std::vector<Config> configs_;
  std::vector<unsigned> tags_;
  std::vector<GaugeTransform> generators_;
  std::vector<std::vector<std::size_t>> action_;

  void build_action();
};

namespace generators {
/// Constant quaternion-unit gauges i*sigma_1, i*sigma_3 generating Q8 in SU(2).
std::vector<GaugeTransform> quaternion(LatticePtr lat, AlgebraPtr su2);
/// Constant rotations Rz(pi/2), Rx(pi/2) generating the cube group in SO(3).
std::vector<GaugeTransform> cube(LatticePtr lat, AlgebraPtr so3);
/// Constant Rz(pi/2), Rx(pi): the normalizer of SO(2) inside the cube group.
std::vector<GaugeTransform> so2_normalizer(LatticePtr lat, AlgebraPtr so3);
/// Gauge-exact constant generators for a catalog algebra; empty for abelian ones.
std::vector<GaugeTransform> standard(LatticePtr lat, AlgebraPtr alg);
}  // namespace generators

/// Lattice translation by one step along `axis`; moves every field component.
Config translate(const Config& c, int axis);
/// The same configuration on another lattice with identical extents.
Config relabel(const Config& c, LatticePtr lat);

}  // namespace ymt
