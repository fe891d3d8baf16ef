#pragma once

/// \file
/// Truncated two-variable Taylor series and their restrictions to the lines
/// {z_1 = eta z_2} through the origin.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "holo/precision.hpp"

namespace holo {

/// A point of C^2.
struct Point2 {
  ApComplex z1;
  ApComplex z2;

  int precision() const { return std::max(z1.precision(), z2.precision()); }
};

/// Euclidean norm sqrt(|z1|^2 + |z2|^2).
ApReal norm2(const Point2& z);

/// sum_{k+l <= M} a_{k,l} z_1^k z_2^l. Coefficients outside the stored
/// triangle are identically zero; evaluation is exact polynomial evaluation.
class TaylorSeries2 {
 public:
  TaylorSeries2(std::size_t max_order, int precision_bits);

  std::size_t max_order() const { return max_order_; }
  int precision() const { return precision_; }

  /// Throws Error(domain) when k + l > max_order.
  const ApComplex& coeff(std::size_t k, std::size_t l) const;
  void set_coeff(std::size_t k, std::size_t l, ApComplex value);

  /// Largest total degree carrying a nonzero coefficient; -1 for the zero series.
  long degree() const;

  TaylorSeries2 with_precision(int precision_bits) const;
  /// Keeps the terms with k + l <= max_order (zero-padded when larger).
  TaylorSeries2 truncated(std::size_t max_order) const;

  friend TaylorSeries2 operator+(const TaylorSeries2& a, const TaylorSeries2& b);
  friend TaylorSeries2 operator*(const ApComplex& c, const TaylorSeries2& f);

 private:
  std::size_t index(std::size_t k, std::size_t l) const;

  std::size_t max_order_;
  int precision_;
  std::vector<ApComplex> coeffs_;  // graded: degree m block holds (k, m-k), k = 0..m
};

/// f restricted to {z_1 = eta z_2}: v -> sum_m c_m v^m.
struct LineRestriction {
  ApComplex slope;
  std::vector<ApComplex> coeffs;

  ApComplex operator()(const ApComplex& v) const;
};

/// Graded summation, total degree ascending.
ApComplex eval2(const TaylorSeries2& f, const Point2& z);

/// c_m = sum_{k+l=m} a_{k,l} eta^k.
LineRestriction restrict_to_line(const TaylorSeries2& f, const ApComplex& eta);

struct LineProjection {
  /// (z_2 + conj(eta) z_1) / (1 + |eta|^2)
  ApComplex w;
  /// (eta w, w)
  Point2 point;
};

/// Hermitian orthogonal projection of z onto the line {z_1 = eta z_2}.
LineProjection project_to_line(const ApComplex& eta, const Point2& z);

namespace series {
/// Truncation of exp(z_1 + z_2): a_{k,l} = 1/(k! l!).
TaylorSeries2 exp_sum(std::size_t max_order, int precision_bits);
/// Truncation of exp(z_1) cos(z_2).
TaylorSeries2 exp_cos(std::size_t max_order, int precision_bits);
/// Polynomial of total degree <= degree with real and imaginary parts of every
/// coefficient drawn uniformly from [-1, 1) (53-bit values, exact in any
/// precision).
TaylorSeries2 random_polynomial(std::size_t degree, std::uint64_t seed, int precision_bits);
/// "k,l,re,im;k,l,re,im;..." with max_order the largest k+l present.
TaylorSeries2 parse_inline(std::string_view spec, int precision_bits);
}  // namespace series

}  // namespace holo
