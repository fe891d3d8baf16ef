#pragma once

/// \file
/// Arbitrary-precision real and complex scalars backed by MPFR.
///
/// Every binary operation rounds to nearest at the larger of the two operand
/// precisions, so mixing a 256-bit and a 512-bit value yields a 512-bit
/// result. Integer operands never lower the precision of the result.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace holo {

inline constexpr int kMinPrecision = 64;
inline constexpr int kDefaultPrecision = 256;

/// Throws Error(configuration) when `bits` is below kMinPrecision.
void require_precision(int bits);

class ApReal {
 public:
  /// Zero at kMinPrecision bits.
  ApReal();
  ApReal(long value, int precision_bits);

  static ApReal zero(int precision_bits) { return ApReal(0, precision_bits); }
  static ApReal from_double(double value, int precision_bits);
  /// Parses a signed decimal ("-12.5e-3"); throws Error(malformed_number).
  static ApReal parse(std::string_view decimal, int precision_bits);
  static ApReal pi(int precision_bits);
  /// Exactly 2^exponent.
  static ApReal pow2(long exponent, int precision_bits);

  ApReal(const ApReal& other);
  ApReal(ApReal&& other) noexcept;
  ApReal& operator=(const ApReal& other);
  ApReal& operator=(ApReal&& other) noexcept;
  ~ApReal();

  int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }

  /// Copy rounded (or exactly widened) to `precision_bits`.
  ApReal with_precision(int precision_bits) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// log2|x| as a double; -inf for zero.
  double log2_abs() const;

  /// Shortest decimal string that parses back to the same value at this
  /// precision.
  std::string to_string() const;
  /// Decimal string with `digits` significant digits.
  std::string to_string(int digits) const;

  ApReal operator-() const;
  ApReal& operator+=(const ApReal& rhs);
  ApReal& operator-=(const ApReal& rhs);
  ApReal& operator*=(const ApReal& rhs);
  ApReal& operator/=(const ApReal& rhs);

  friend ApReal operator+(const ApReal& a, const ApReal& b);
  friend ApReal operator-(const ApReal& a, const ApReal& b);
  friend ApReal operator*(const ApReal& a, const ApReal& b);
  friend ApReal operator/(const ApReal& a, const ApReal& b);
  friend ApReal operator+(const ApReal& a, long b);
  friend ApReal operator-(const ApReal& a, long b);
  friend ApReal operator*(const ApReal& a, long b);
  friend ApReal operator/(const ApReal& a, long b);
  friend ApReal operator+(long a, const ApReal& b) { return b + a; }
  friend ApReal operator*(long a, const ApReal& b) { return b * a; }
  friend ApReal operator-(long a, const ApReal& b);
  friend ApReal operator/(long a, const ApReal& b);

  friend bool operator==(const ApReal& a, const ApReal& b);
  friend std::partial_ordering operator<=>(const ApReal& a, const ApReal& b);
  friend bool operator==(const ApReal& a, long b);
  friend std::partial_ordering operator<=>(const ApReal& a, long b);

 private:
  struct Raw {};
  ApReal(Raw, mpfr_prec_t bits);
  mpfr_t value_;
};

ApReal abs(const ApReal& x);
ApReal sqrt(const ApReal& x);
ApReal exp(const ApReal& x);
ApReal log(const ApReal& x);
ApReal sin(const ApReal& x);
ApReal cos(const ApReal& x);
ApReal atan2(const ApReal& y, const ApReal& x);
ApReal pow(const ApReal& x, long n);
/// x^y for x > 0.
ApReal pow(const ApReal& x, const ApReal& y);
/// x * 2^n, exact.
ApReal ldexp(const ApReal& x, long n);
/// Fractional part in [0, 1).
ApReal frac(const ApReal& x);
const ApReal& max(const ApReal& a, const ApReal& b);
const ApReal& min(const ApReal& a, const ApReal& b);

std::ostream& operator<<(std::ostream& os, const ApReal& x);

/// Complex scalar; both parts always share one precision.
class ApComplex {
 public:
  ApComplex() = default;
  explicit ApComplex(int precision_bits);
  ApComplex(long re, long im, int precision_bits);
  ApComplex(ApReal re, ApReal im);
  explicit ApComplex(ApReal re);

  static ApComplex i(int precision_bits) { return {0, 1, precision_bits}; }
  /// r * e^{i*angle}.
  static ApComplex polar(const ApReal& r, const ApReal& angle);

  const ApReal& real() const { return re_; }
  const ApReal& imag() const { return im_; }
  int precision() const { return re_.precision(); }
  ApComplex with_precision(int precision_bits) const;

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  ApComplex operator-() const { return {-re_, -im_}; }
  ApComplex& operator+=(const ApComplex& rhs);
  ApComplex& operator-=(const ApComplex& rhs);
  ApComplex& operator*=(const ApComplex& rhs);
  ApComplex& operator/=(const ApComplex& rhs);

  friend ApComplex operator+(const ApComplex& a, const ApComplex& b);
  friend ApComplex operator-(const ApComplex& a, const ApComplex& b);
  friend ApComplex operator*(const ApComplex& a, const ApComplex& b);
  friend ApComplex operator/(const ApComplex& a, const ApComplex& b);
  friend ApComplex operator*(const ApComplex& a, const ApReal& b);
  friend ApComplex operator*(const ApReal& a, const ApComplex& b) { return b * a; }
  friend ApComplex operator/(const ApComplex& a, const ApReal& b);
  friend ApComplex operator+(const ApComplex& a, long b);
  friend ApComplex operator-(const ApComplex& a, long b);
  friend ApComplex operator*(const ApComplex& a, long b);
  friend ApComplex operator/(const ApComplex& a, long b);
  friend ApComplex operator+(long a, const ApComplex& b) { return b + a; }
  friend ApComplex operator-(long a, const ApComplex& b) { return -(b - a); }
  friend ApComplex operator*(long a, const ApComplex& b) { return b * a; }
  friend ApComplex operator/(long a, const ApComplex& b);

  /// Exact equality of both parts.
  friend bool operator==(const ApComplex& a, const ApComplex& b);

 private:
  ApReal re_;
  ApReal im_;
};

ApComplex conj(const ApComplex& z);
/// |z|^2
ApReal norm(const ApComplex& z);
ApReal abs(const ApComplex& z);
ApReal arg(const ApComplex& z);
ApComplex pow(const ApComplex& z, long n);
ApComplex sqrt(const ApComplex& z);
ApComplex exp(const ApComplex& z);

std::ostream& operator<<(std::ostream& os, const ApComplex& z);

/// Parses a complex from two decimal strings, correctly rounded.
ApComplex make_complex(std::string_view re_decimal, std::string_view im_decimal,
                       int precision_bits);

/// Accept |a-b| <= abs_eps + rel_eps * max(|a|, |b|).
struct Tolerance {
  ApReal rel_eps;
  ApReal abs_eps;

  /// Both bounds 2^(-precision_bits/2).
  static Tolerance for_precision(int precision_bits);
  static Tolerance absolute(const ApReal& eps);
};

bool approx_eq(const ApComplex& a, const ApComplex& b, const Tolerance& tol);

/// max(|a|,|b|)-relative distance; returns |a-b| when both vanish.
ApReal relative_error(const ApComplex& a, const ApComplex& b);

}  // namespace holo
