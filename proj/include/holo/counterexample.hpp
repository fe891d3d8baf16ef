#pragma once

/// \file
/// Construction of a bounded node sequence on R u iR, accumulating at 0, along
/// which the divided differences of conj(zeta) / (1 + |zeta|^2) grow at least
/// like p^p.
///
/// Stage p (zero-based) appends three nodes eta_{3p+1}, eta_{3p+2}, eta_{3p+3}.
/// The first makes the anti-holomorphic derivative of
/// g(zeta) = f[eta_1, ..., eta_{3p+1}, zeta] at 0 large; the pair is then
/// aligned with the phase of dg/dzeta over dg/dconj(zeta) so that
/// |Delta_{3p+2}(f)(eta_{3p+3})| >= (p+1)^{p+1}, which is checked directly.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holo/divided_diff.hpp"

namespace holo {

/// zeta -> conj(zeta) / (1 + |zeta|^2) with d/dconj(zeta) = 1 / (1 + |zeta|^2)^2.
ScalarFunction default_kernel();

/// Wirtinger derivatives of zeta -> f[prefix..., zeta] at zeta = 0.
struct WirtingerPair {
  ApComplex d_z;
  ApComplex d_zbar;
};

/// d_zbar from (df/dconj zeta)(0) / prod(-eta_i); d_z from central differences
/// along both axes with step h = rho 2^{-precision/3} (rho the smallest node
/// modulus, 1 for an empty prefix) and one Richardson step (h, h/2).
/// Throws Error(degenerate_node) if 0 is in the prefix and
/// Error(unsuitable_kernel) if f has no closed-form d_zbar.
WirtingerPair wirtinger_at_zero(const ScalarFunction& f, std::span<const ApComplex> prefix,
                                int precision_bits);
inline WirtingerPair wirtinger_at_zero(const ScalarFunction& f, const NodeSequence& prefix) {
  return wirtinger_at_zero(f, prefix.values(), prefix.precision());
}

enum class Axis { real, imaginary };
enum class PairCase { real_pair, imaginary_pair, mixed };

const char* to_string(Axis axis);
const char* to_string(PairCase c);

struct StageRecord {
  std::size_t p = 0;  ///< zero-based stage
  ApComplex nodes[3];
  PairCase pair_case = PairCase::mixed;
  ApReal d_zbar_magnitude;
  /// |Delta_{3p+2}(f)(eta_{3p+3})| as accepted
  ApReal achieved;
  ApReal target;
  int precision_bits = 0;
};

struct AdversarialSequence {
  std::vector<ApComplex> nodes;
  std::vector<Axis> axes;
  std::vector<StageRecord> stage_log;

  std::size_t stages() const { return stage_log.size(); }
  /// Throws Error(arity) when empty.
  NodeSequence node_sequence() const { return NodeSequence(nodes); }
  /// Highest precision used by any stage.
  int precision_bits() const;
};

struct PrecisionPolicy {
  int initial_bits = kDefaultPrecision;
  int max_bits = 1 << 16;
  /// Halvings of the pair radius allowed before the stage counts as stalled.
  std::size_t shrink_budget = 96;
  bool escalate = true;
};

/// Throws Error(configuration) for stages == 0, Error(unsuitable_kernel) if
/// df/dconj(zeta)(0) == 0 and Error(construction_failure) when a stage stalls
/// at the maximum precision.
AdversarialSequence build_sequence(const ScalarFunction& f, std::size_t stages,
                                   const PrecisionPolicy& policy = {});

/// sum over pairs of |log2 |eta_i - eta_j||
double cancellation_estimate(std::span<const ApComplex> nodes);

struct GrowthCheck {
  std::size_t p = 0;  ///< one-based: checks |Delta_{3p-1}(f)(eta_{3p})| >= p^p
  std::optional<ApReal> achieved;
  ApReal target;
  int precision_bits = 0;
  bool pass = false;
  std::string note;
};

struct GrowthReport {
  std::vector<GrowthCheck> rows;
  /// Broken structural invariants (axis membership, modulus ordering, limits).
  std::vector<std::string> violations;

  bool passed() const;
};

/// Recomputes every logged stage with a fresh table at the logged precision
/// plus 64 guard bits. Missing nodes turn into failing rows, never exceptions.
GrowthReport verify_growth(const AdversarialSequence& seq, const ScalarFunction& f);

}  // namespace holo
