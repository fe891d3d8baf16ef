#pragma once

/// \file
/// Divided differences over distinct complex nodes.
///
/// For nodes eta_1, eta_2, ... and a function h, Delta_p(h)(eta_{p+1}) is the
/// p-th order divided difference h[eta_1, ..., eta_{p+1}] built from the
/// two-term quotient recursion. Everything here is computed through the
/// triangular table so each order costs O(p) given the previous one.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holo/precision.hpp"

namespace holo {

/// Row p of the table holds Delta_p over the sliding windows
/// (eta_{k+1}, ..., eta_{k+p+1}); rows[p][k] for k + p < nodes.size().
/// Scalar needs +, -, / only, so exact rational types work as well.
template <class Scalar>
std::vector<std::vector<Scalar>> divided_difference_rows(std::span<const Scalar> nodes,
                                                         std::span<const Scalar> values) {
  std::vector<std::vector<Scalar>> rows;
  if (values.empty()) return rows;
  rows.reserve(values.size());
  rows.emplace_back(values.begin(), values.end());
  for (std::size_t p = 1; p < values.size(); ++p) {
    const auto& prev = rows.back();
    std::vector<Scalar> next;
    next.reserve(prev.size() - 1);
    for (std::size_t k = 0; k + 1 < prev.size(); ++k) {
      next.push_back((prev[k + 1] - prev[k]) / (nodes[k + p] - nodes[k]));
    }
    rows.push_back(std::move(next));
  }
  return rows;
}

/// Ordered, pairwise-distinct nodes (exact comparison), at least one.
class NodeSequence {
 public:
  /// Throws Error(arity) when empty and Error(node_distinctness) on a repeat.
  explicit NodeSequence(std::vector<ApComplex> nodes);

  std::size_t size() const { return nodes_.size(); }
  const ApComplex& operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const ApComplex> values() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

  int precision() const;
  /// First `count` nodes; throws Error(arity) if count is 0 or too large.
  NodeSequence prefix(std::size_t count) const;
  /// nodes[perm[0]], nodes[perm[1]], ...
  NodeSequence permuted(std::span<const std::size_t> perm) const;
  NodeSequence with_precision(int precision_bits) const;

  /// Smallest |eta_i - eta_j| over i != j; empty for a single node.
  std::optional<ApReal> min_gap() const;
  ApReal max_modulus() const;

 private:
  struct Trusted {};
  NodeSequence(std::vector<ApComplex> nodes, Trusted) : nodes_(std::move(nodes)) {}

  std::vector<ApComplex> nodes_;
};

/// `count` seeded points uniform in the disc |z| < radius.
NodeSequence random_disc_nodes(std::size_t count, double radius, std::uint64_t seed,
                               int precision_bits);

/// Non-empty message when two nodes are closer than 2^(-precision/2).
std::optional<std::string> conditioning_warning(const NodeSequence& nodes);

struct ScalarFunction {
  enum class Kind { analytic_series, conjugate_kernel, composite };

  Kind kind = Kind::composite;
  std::string name;
  std::function<ApComplex(const ApComplex&)> eval;
  /// Closed-form anti-holomorphic Wirtinger derivative, when known.
  std::function<ApComplex(const ApComplex&)> d_zbar;

  ApComplex operator()(const ApComplex& z) const { return eval(z); }
};

namespace functions {
ScalarFunction constant(const ApComplex& c);
ScalarFunction identity();
ScalarFunction conjugate();
/// sum_n coeffs[n] * (z - center)^n
ScalarFunction polynomial(std::vector<ApComplex> coeffs, ApComplex center);
ScalarFunction product(ScalarFunction g, ScalarFunction h);
}  // namespace functions

class DividedDiffTable {
 public:
  DividedDiffTable(NodeSequence nodes, std::vector<ApComplex> values);

  const NodeSequence& nodes() const { return nodes_; }
  std::size_t orders() const { return rows_.size(); }
  /// T[p][k] = Delta_{p,(eta_{k+p},...,eta_{k+1})}(h)(eta_{k+p+1}).
  const ApComplex& at(std::size_t p, std::size_t k) const { return rows_.at(p).at(k); }
  const std::vector<ApComplex>& row(std::size_t p) const { return rows_.at(p); }

 private:
  NodeSequence nodes_;
  std::vector<std::vector<ApComplex>> rows_;
};

DividedDiffTable delta_table(const ScalarFunction& h, const NodeSequence& prefix);

/// Delta_{p,(eta_p,...,eta_1)}(h)(eta_{p+1}).
ApComplex delta(const ScalarFunction& h, const NodeSequence& prefix, std::size_t p);

/// Newton form of the degree N-1 interpolant of h on eta_1..eta_N, at x.
ApComplex newton_sum(const ScalarFunction& h, const NodeSequence& prefix, std::size_t n,
                     const ApComplex& x);

/// Lagrange form of the same interpolant.
ApComplex lagrange_sum(const ScalarFunction& h, const NodeSequence& prefix, std::size_t n,
                       const ApComplex& x);

/// Product rule: sum_q Delta_{p-q}(g) over (eta_{q+1}..eta_{p+1}) times
/// Delta_q(h) over (eta_1..eta_{q+1}).
ApComplex leibniz_delta(const ScalarFunction& g, const ScalarFunction& h,
                        const NodeSequence& prefix, std::size_t p);

/// Delta_p of sum_n a_n (w - center)^n through the explicit nested sum over
/// monotone exponent tuples.
ApComplex delta_analytic(std::span<const ApComplex> series_coeffs, const ApComplex& center,
                         const NodeSequence& prefix, std::size_t p);

/// Number of tuples n >= l_1 >= ... >= l_p >= 0, i.e. (n+p)!/(n! p!).
std::uint64_t monotone_tuple_count(unsigned n, unsigned p);

}  // namespace holo
