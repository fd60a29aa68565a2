#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ymt/domain.hpp"
#include "ymt/group_ring.hpp"
#include "ymt/theory.hpp"

namespace ymt {

struct ExtensionFlags {
  bool full = false;
  bool complete = false;
  bool equivariant = false;
  bool linear = false;
};

/// Finite model of an extension (S_hat, C, delta) of a base theory along an
/// embedding. Functional values are exact rationals (stored doubles convert
/// without rounding); the correction domain is a list of ascending indices
/// into the extended domain.
struct Extension {
  std::string kind;
  YMTTheory base;
  GroupEmbedding embedding;
  std::shared_ptr<const SampledDomain> domain;
  std::vector<std::size_t> correction;
  std::vector<mpq_class> s_hat;          // per domain configuration
  std::vector<mpq_class> c;              // per correction point
  std::vector<mpq_class> base_on_delta;  // S^G(delta(beta)) per correction point
  std::optional<std::vector<LinkField>> delta;
  ExtensionFlags flags;

  std::optional<std::size_t> correction_position(std::size_t config) const;
  /// Smallest index set containing the zero configuration.
  std::size_t zero_position() const;
};

struct ExtensionReport {
  bool ok = true;
  std::size_t samples = 0;
  double decomposition_residual = 0.0;  // max |S_hat(j b) - S(delta b) - C(b)|
  double decomposition_scale = 1.0;
  double gauge_residual = 0.0;
  double delta_residual = 0.0;  // stored composite vs recomputed S(delta)
  bool zero_in_correction = false;
  bool connections_contained = false;
  bool correction_closed = false;
  bool complete_consistent = false;
  bool equivariant_consistent = false;
  std::vector<std::string> failures;
};

ExtensionReport check_extension(const Extension& e);
/// Throws VerificationError listing the failures when check_extension is not ok.
void require_valid(const Extension& e, const char* what);

bool same_theory(const YMTTheory& a, const YMTTheory& b);
bool same_embedding(const GroupEmbedding& a, const GroupEmbedding& b);

/// Pointwise sum on the intersection of extended domains.
Extension sum(const Extension& e1, const Extension& e2);

/// Pulled-back action of group element g: values move only on correction points.
Extension act(const GroupAction& a, int g, const Extension& e);
/// Pointwise rational scaling of every functional table.
Extension scale(const mpq_class& q, const Extension& e);
/// sum_g x_g (g * e) for x in Q[Z/n].
Extension module_scalar(const GroupRingElement& x, const GroupAction& a, const Extension& e);
/// Restriction to a generator-closed subset (ascending indices of e.domain).
Extension restrict(const Extension& e, const std::vector<std::size_t>& sub);

/// S^G on a configuration's links.
double base_action(const YMTTheory& t, const LinkField& u);
mpq_class exact(double v);

}  // namespace ymt
