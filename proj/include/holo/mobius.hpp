#pragma once

/// \file
/// Reduction of a non-dense node set to a bounded one: pick eta_inf away from
/// the nodes, send eta_j to theta_j = (1 + conj(eta_inf) eta_j) / (eta_j - eta_inf)
/// and change variables on C^2 by the unitary
///   U = (1 / sqrt(1 + |eta_inf|^2)) [[conj(eta_inf), 1], [1, -eta_inf]],
/// which maps the line {z_1 = eta_j z_2} onto {z_1 = theta_j z_2}.

#include <array>

#include "holo/divided_diff.hpp"
#include "holo/function_model.hpp"

namespace holo {

using Mat2 = std::array<std::array<ApComplex, 2>, 2>;

Mat2 adjoint(const Mat2& m);
Mat2 operator*(const Mat2& a, const Mat2& b);
Point2 operator*(const Mat2& m, const Point2& z);
/// max |(m m^* - I)_{ij}|
ApReal unitarity_residual(const Mat2& m);

class MobiusContext {
 public:
  /// Throws Error(separation) if eta_inf coincides with a node.
  MobiusContext(const NodeSequence& nodes, ApComplex eta_inf);

  const ApComplex& eta_inf() const { return eta_inf_; }
  /// min_j |eta_j - eta_inf| over the supplied nodes
  const ApReal& separation() const { return separation_; }
  const Mat2& unitary() const { return unitary_; }
  Mat2 unitary_adjoint() const { return adjoint(unitary_); }

  ApComplex theta(const ApComplex& eta) const;
  /// Inverse homography (eta_inf w + 1) / (w - conj(eta_inf)).
  ApComplex theta_inverse(const ApComplex& w) const;
  /// Explicit bound on sup_j |theta_j|.
  ApReal theta_bound() const;

 private:
  ApComplex eta_inf_;
  ApReal separation_;
  Mat2 unitary_;
};

inline MobiusContext make_context(const NodeSequence& nodes, const ApComplex& eta_inf) {
  return MobiusContext(nodes, eta_inf);
}

/// (theta_j). Throws Error(separation) if a node coincides with eta_inf.
NodeSequence to_bounded(const MobiusContext& ctx, const NodeSequence& nodes);

/// (U^* zeta)_1 - eta_j (U^* zeta)_2 - ((eta_inf - eta_j)/sqrt(1+|eta_inf|^2)) (zeta_1 - theta_j zeta_2)
ApComplex line_factor_check(const MobiusContext& ctx, const ApComplex& eta_j, const Point2& zeta);

/// Taylor coefficients of f o U^*; the substitution is linear so the max
/// order is unchanged.
TaylorSeries2 pushforward(const TaylorSeries2& f, const MobiusContext& ctx);

/// (R_N(f; eta)(z) - tail_f(z)) - (R_N(f o U^*; theta)(Uz) - tail_{f o U^*}(Uz)),
/// both remainders in Lagrange form.
ApComplex reduction_coherence(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                              const MobiusContext& ctx, const Point2& z);

/// Centre of the largest empty disc found by a grid search over the nodes'
/// bounding box (padded by one unit), `steps` points per side.
ApComplex suggest_eta_inf(const NodeSequence& nodes, std::size_t steps = 64);

}  // namespace holo
