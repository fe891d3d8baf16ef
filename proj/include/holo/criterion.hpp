#pragma once

/// \file
/// Empirical probes of the growth condition
///   |Delta_p[(conj(zeta) / (1 + |zeta|^2))^q](eta_{p+1})| <= R^{p+q}
/// over a finite (P, Q) window, plus node families (lines, circles) whose
/// conjugation agrees with a holomorphic germ.
///
/// Every constant reported here is an observed lower estimate over the window;
/// none of it certifies that the condition holds for all p, q.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "holo/divided_diff.hpp"
#include "holo/function_model.hpp"

namespace holo {

/// zeta -> conj(zeta)^s / (1 + |zeta|^2)^q. Throws Error(domain) if s > q.
ScalarFunction conj_kernel(unsigned q, unsigned s);

/// zeta -> ((z_2 + conj(zeta) z_1) / (1 + |zeta|^2))^q
ScalarFunction projection_kernel(unsigned q, const Point2& z);

struct CriterionProfile {
  std::size_t max_p = 0;
  std::size_t max_q = 0;
  /// raw[p][q] = |Delta_p[g_q](eta_{p+1})|
  std::vector<std::vector<ApReal>> raw;
  /// raw^{1/(p+q)}; entry (0,0) is raw[0][0] itself
  std::vector<std::vector<ApReal>> normalized;
  /// max of normalized over p + q >= 1 (observed)
  ApReal r_hat;
};

/// Throws Error(arity) when nodes has fewer than max_p + 1 entries.
CriterionProfile criterion_profile(const NodeSequence& nodes, std::size_t max_p,
                                   std::size_t max_q);

struct MixedProfile {
  std::size_t max_p = 0;
  std::size_t max_q = 0;
  /// entries[p][q][s] = |Delta_p[conj_kernel(q, s)](eta_{p+1})|, s <= q
  std::vector<std::vector<std::vector<ApReal>>> entries;
  /// the signed values behind `entries`, same layout
  std::vector<std::vector<std::vector<ApComplex>>> values;
};

MixedProfile mixed_profile(const NodeSequence& nodes, std::size_t max_p, std::size_t max_q);

/// [max(3, 3 * max_modulus, r_hat)]^2
ApReal strengthened_constant(const ApReal& r_hat, const ApReal& max_modulus);

/// Largest entries[p][q][s] / bound^{p+q} over the profile; <= 1 means the
/// strengthened bound holds on the window.
ApReal strengthened_bound_ratio(const MixedProfile& profile, const ApReal& bound);

/// Delta_p[projection_kernel(q, z)] assembled from the mixed profile through
/// the binomial expansion sum_u C(q,u) z_2^{q-u} z_1^u Delta_p[conj_kernel(q,u)].
ApComplex binomial_kernel_delta(const MixedProfile& profile, std::size_t p, std::size_t q,
                                const Point2& z);

// ------------------------------------------------------------ families

struct ExplicitList {
  std::vector<ApComplex> nodes;
};

/// The real line a Re(z) + b Im(z) + c = 0.
struct LineFamily {
  ApReal a, b, c;
};

struct CircleFamily {
  ApComplex center;
  ApReal radius;
};

struct CustomFamily {
  std::function<ApComplex(std::size_t index, int precision_bits)> generator;
};

using NodeFamily = std::variant<ExplicitList, LineFamily, CircleFamily, CustomFamily>;

/// Deterministic nodes on the family. Lines use the low-discrepancy
/// parameters t_k = 2 frac((k + seed + 1) phi) - 1 along the unit direction
/// from the point nearest the origin; circles use z0 + r e^{2 pi i (k + seed) phi}
/// with phi the golden-ratio fraction. Throws Error(configuration) on
/// degenerate parameters and Error(node_distinctness) if points collide.
NodeSequence generate_nodes(const NodeFamily& family, std::size_t count, std::uint64_t seed,
                            int precision_bits);

/// Holomorphic g with g(eta) = conj(eta) on the family. Throws
/// Error(no_germ) for explicit lists and custom generators.
ScalarFunction germ_for_family(const NodeFamily& family);

// ------------------------------------------------------ uniform probe

struct UniformDeltaProbe {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// max over sampled subsequences of |Delta_p(kernel)|, index p
  std::vector<ApReal> max_by_order;
  /// exp of the least-squares slope of log(max) against p over p >= 1 with
  /// nonzero maxima; empty when fewer than two such orders exist
  std::optional<double> growth_ratio;
};

/// For each p <= p_max evaluates the contiguous prefix plus `trials` random
/// increasing subsequences j_1 < ... < j_{p+1}. Kernel defaults to conj(zeta).
UniformDeltaProbe uniform_delta_probe(const NodeSequence& nodes, std::size_t p_max,
                                      std::size_t trials, std::uint64_t seed,
                                      const ScalarFunction& kernel = functions::conjugate());

}  // namespace holo
