#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ymt/constructors.hpp"

namespace ymt {

using ExtensionPtr = std::shared_ptr<const Extension>;

/// Morphism of extensions as index maps: f on extended domains, g on
/// correction positions.
struct ExtMorphism {
  ExtensionPtr source;
  ExtensionPtr target;
  std::vector<std::size_t> f;
  std::vector<std::size_t> g;
};

struct MorphismReport {
  bool ok = true;
  bool f_equivariant = true;
  bool g_equivariant = true;  // only enforced in strict mode
  bool inclusion_commutes = true;
  double s_residual = 0.0;
  double c_residual = 0.0;
  double delta_residual = 0.0;
  std::vector<std::string> failures;
};

MorphismReport check_morphism(const ExtMorphism& m, bool strict = false);
/// Builds and validates; throws VerificationError when a diagram fails.
ExtMorphism make_morphism(ExtensionPtr source, ExtensionPtr target, std::vector<std::size_t> f,
                          std::vector<std::size_t> g, bool strict = false);
ExtMorphism identity_morphism(const ExtensionPtr& e);
/// m2 after m1.
ExtMorphism compose(const ExtMorphism& m2, const ExtMorphism& m1);

struct Classification {
  bool mono = false;
  bool epi = false;
  bool iso = false;
};
Classification classify(const ExtMorphism& m);
/// Two-sided inverse when f and g are bijections and the inverse passes the diagram checks.
std::optional<ExtMorphism> inverse(const ExtMorphism& m);

struct BFIso {
  ExtensionPtr identity;
  ExtensionPtr bf;
  ExtMorphism forward;   // f = g = curvature diagonal
  ExtMorphism backward;  // projection to the connection
};
BFIso bf_identity_iso(const YMTTheory& base, DomainPtr dom, std::uint64_t seed = 0);

struct TerminalWitness {
  std::string kind;
  std::size_t morphism_count = 0;
  bool exists = false;
  bool unique = false;
  /// Whether the forced pair also satisfies the S_hat and delta triangles.
  bool full_diagram = false;
  std::string obstruction;
};
struct TerminalReport {
  bool terminal = true;
  std::vector<TerminalWitness> witnesses;
};
/// Existence and uniqueness of a morphism from each candidate into `nullext`:
/// g is forced to the zero point, f must be equivariant, send correction
/// points to the zero point and satisfy C_null o g = C.
TerminalReport terminal_check(const std::vector<ExtensionPtr>& candidates, const ExtensionPtr& nullext);

struct ProbeReport {
  bool value_slice = true;       // S_hat2 o f = S_hat1
  bool correction_slice = true;  // C2 o g = C1
  bool connection_slice = true;  // delta2 o h = delta1, h = g
  bool f_bijective = false;
  bool g_bijective = false;
  bool product_iso = false;
  bool ext_iso = false;
  bool counterexample = false;
  std::string located;
};
ProbeReport embedding_probe(const ExtMorphism& m);

/// Number of equivariant maps src -> tgt agreeing with `forced` where set
/// (saturates at SIZE_MAX).
std::size_t count_equivariant_maps(const SampledDomain& src, const SampledDomain& tgt,
                                   const std::vector<std::optional<std::size_t>>& forced);
/// A uniformly drawn orbit-wise equivariant map, or nullopt when none exists.
std::optional<std::vector<std::size_t>> random_equivariant_map(const SampledDomain& src, const SampledDomain& tgt,
                                                               const std::vector<std::optional<std::size_t>>& forced,
                                                               Rng& rng);

}  // namespace ymt
