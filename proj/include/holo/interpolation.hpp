#pragma once

/// \file
/// The explicit interpolant E_N built from the restrictions of f to the first
/// N lines {z_1 = eta_j z_2}, the remainder R_N in Lagrange and Newton form,
/// and the identity f = E_N - R_N + sum_{k+l>=N} a_{k,l} z_1^k z_2^l.
///
/// All node indices in this header are zero-based: node q is eta_{q+1}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "holo/divided_diff.hpp"
#include "holo/function_model.hpp"

namespace holo {

/// The data a reconstructor is allowed to see: f restricted to each line.
class LineSamples {
 public:
  /// Restrictions of f to the first `count` nodes.
  LineSamples(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t count);
  LineSamples(NodeSequence nodes, std::vector<LineRestriction> lines);

  const NodeSequence& nodes() const { return nodes_; }
  std::size_t size() const { return lines_.size(); }
  const LineRestriction& line(std::size_t q) const { return lines_.at(q); }

 private:
  NodeSequence nodes_;
  std::vector<LineRestriction> lines_;
};

/// E_N for fixed line data and N, with the z-independent weights
///   (1 + eta_p conj(eta_q)) / ((1 + |eta_q|^2) prod_{j=p..N, j!=q} (eta_q - eta_j))
/// precomputed, so evaluating over a grid costs O(N^2 + N M) per point.
class ExplicitInterpolant {
 public:
  /// Throws Error(arity) unless 1 <= n <= samples.size().
  ExplicitInterpolant(LineSamples samples, std::size_t n);

  std::size_t order() const { return n_; }
  const LineSamples& samples() const { return samples_; }
  ApComplex operator()(const Point2& z) const;

 private:
  LineSamples samples_;
  std::size_t n_;
  std::vector<std::vector<ApComplex>> weight_;  // weight_[p][q - p]
};

/// L_q(z) = prod_{j<N, j!=q} (z_1 - eta_j z_2) / (eta_q - eta_j).
ApComplex lagrange_monomial(const NodeSequence& nodes, std::size_t n, std::size_t q,
                            const Point2& z);

ApComplex eval_EN(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                  const Point2& z);

/// sum_p L_p(z) sum_{N <= k+l <= M} a_{k,l} eta_p^k w_p(z)^{k+l-N+1}
ApComplex eval_RN_lagrange(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                           const Point2& z);

/// The kernel zeta -> sum_{m=N}^{M} w(zeta, z)^{m-N+1} sum_{k+l=m} a_{k,l} zeta^k
/// with w(zeta, z) = (z_2 + conj(zeta) z_1) / (1 + |zeta|^2). Not holomorphic
/// in zeta. The returned function keeps a reference to `f`.
ScalarFunction remainder_kernel(const TaylorSeries2& f, std::size_t n, const Point2& z);

/// sum_p z_2^{N-1-p} prod_{j<p} (z_1 - eta_j z_2) Delta_p[remainder_kernel](eta_{p+1})
ApComplex eval_RN_newton(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                         const Point2& z);

/// sum_{N <= k+l <= M} a_{k,l} z_1^k z_2^l
ApComplex eval_tail(const TaylorSeries2& f, std::size_t n, const Point2& z);

/// max_q prod_{j<N, j!=q} 1/|eta_q - eta_j|; 1 for N = 1.
ApReal condition_estimate(const NodeSequence& nodes, std::size_t n);

struct InterpolantReport {
  std::size_t n = 0;
  std::size_t node_count = 0;
  ApComplex value_f;
  ApComplex value_EN;
  ApComplex value_RN_lagrange;
  ApComplex value_RN_newton;
  ApComplex value_tail;
  /// E_N - R_N (Lagrange) + tail - f(z)
  ApComplex identity_residual;
  ApReal condition;
};

InterpolantReport identity_report(const TaylorSeries2& f, const NodeSequence& nodes,
                                  std::size_t n, const Point2& z);

/// E_N(f)(eta_p v, v) - f(eta_p v, v), with p < n.
ApComplex interpolation_check(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                              std::size_t p, const ApComplex& v);

/// Largest |E_N(f; sigma(eta)) - E_N(f; eta)| at z over `trials` seeded random
/// permutations sigma of the first n nodes. Diagnostic only.
ApReal order_sensitivity(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                         const Point2& z, std::size_t trials, std::uint64_t seed);

// ------------------------------------------------------------- sweeps

struct GridSpec {
  double radius = 0.5;
  std::size_t per_axis = 5;
  std::size_t random_points = 10;
};

/// per_axis x per_axis points on the torus |z_1| = |z_2| = radius (the
/// distinguished boundary, where sup norms over the polydisc are attained),
/// followed by `random_points` seeded points uniform in the polydisc.
std::vector<Point2> make_grid(const GridSpec& spec, std::uint64_t seed, int precision_bits);

struct ConvergenceRow {
  std::size_t n = 0;
  ApReal sup_error;
  /// sup_error(n) / sup_error(n - 1); empty on the first row or a zero divisor.
  std::optional<ApReal> ratio;
};

/// sup over the grid of |f - E_N(f)| for n = n_min..n_max.
std::vector<ConvergenceRow> convergence_table(const TaylorSeries2& f, const NodeSequence& nodes,
                                              std::size_t n_min, std::size_t n_max,
                                              const std::vector<Point2>& grid);

}  // namespace holo
