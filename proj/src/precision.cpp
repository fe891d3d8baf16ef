#include "holo/precision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <regex>

#include "holo/error.hpp"

namespace holo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::malformed_number: return "malformed-number";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::arity: return "arity";
    case ErrorCode::node_distinctness: return "node-distinctness";
    case ErrorCode::domain: return "domain";
    case ErrorCode::separation: return "separation";
    case ErrorCode::no_germ: return "no-germ";
    case ErrorCode::degenerate_node: return "degenerate-node";
    case ErrorCode::unsuitable_kernel: return "unsuitable-kernel";
    case ErrorCode::construction_failure: return "construction-failure";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void require_precision(int bits) {
  if (bits < kMinPrecision) {
    throw Error(ErrorCode::configuration,
                "precision " + std::to_string(bits) + " bits is below the minimum of " +
                    std::to_string(kMinPrecision));
  }
}

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

mpfr_prec_t joint(const ApReal& a, const ApReal& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

}  // namespace

// ---------------------------------------------------------------- ApReal

ApReal::ApReal(Raw, mpfr_prec_t bits) { mpfr_init2(value_, bits); }

ApReal::ApReal() : ApReal(Raw{}, kMinPrecision) { mpfr_set_zero(value_, 1); }

ApReal::ApReal(long value, int precision_bits) : ApReal(Raw{}, precision_bits) {
  mpfr_set_si(value_, value, kRound);
}

ApReal ApReal::from_double(double value, int precision_bits) {
  ApReal r(Raw{}, precision_bits);
  mpfr_set_d(r.value_, value, kRound);
  return r;
}

ApReal ApReal::parse(std::string_view decimal, int precision_bits) {
  static const std::regex kDecimal(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?)");
  std::string text(decimal);
  if (!std::regex_match(text, kDecimal)) {
    throw Error(ErrorCode::malformed_number, "malformed decimal number '" + text + "'");
  }
  ApReal r(Raw{}, precision_bits);
  char* end = nullptr;
  mpfr_strtofr(r.value_, text.c_str(), &end, 10, kRound);
  if (end == nullptr || *end != '\0') {
    throw Error(ErrorCode::malformed_number, "malformed decimal number '" + text + "'");
  }
  return r;
}

ApReal ApReal::pi(int precision_bits) {
  ApReal r(Raw{}, precision_bits);
  mpfr_const_pi(r.value_, kRound);
  return r;
}

ApReal ApReal::pow2(long exponent, int precision_bits) {
  ApReal r(Raw{}, precision_bits);
  mpfr_set_ui_2exp(r.value_, 1, exponent, kRound);
  return r;
}

ApReal::ApReal(const ApReal& other) : ApReal(Raw{}, mpfr_get_prec(other.value_)) {
  mpfr_set(value_, other.value_, kRound);
}

ApReal::ApReal(ApReal&& other) noexcept : ApReal(Raw{}, mpfr_get_prec(other.value_)) {
  mpfr_swap(value_, other.value_);
}

ApReal& ApReal::operator=(const ApReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

ApReal& ApReal::operator=(ApReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

ApReal::~ApReal() { mpfr_clear(value_); }

ApReal ApReal::with_precision(int precision_bits) const {
  ApReal r(Raw{}, precision_bits);
  mpfr_set(r.value_, value_, kRound);
  return r;
}

double ApReal::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, value_, kRound);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string ApReal::to_string() const {
  return to_string(static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(value_))));
}

std::string ApReal::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";

  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(std::max(digits, 1)),
                           value_, kRound);
  std::string mantissa(raw);
  mpfr_free_str(raw);

  const bool negative = mantissa.front() == '-';
  if (negative) mantissa.erase(0, 1);
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();

  // value = 0.mantissa * 10^exponent
  std::string out = negative ? "-" : "";
  const long n = static_cast<long>(mantissa.size());
  const long e = exponent;
  if (e > 0 && e <= 40) {
    if (n <= e) {
      out += mantissa + std::string(static_cast<size_t>(e - n), '0');
    } else {
      out += mantissa.substr(0, static_cast<size_t>(e)) + "." +
             mantissa.substr(static_cast<size_t>(e));
    }
  } else if (e <= 0 && e > -6) {
    out += "0." + std::string(static_cast<size_t>(-e), '0') + mantissa;
  } else {
    out += mantissa.substr(0, 1);
    if (n > 1) out += "." + mantissa.substr(1);
    out += "e" + std::to_string(e - 1);
  }
  return out;
}

ApReal ApReal::operator-() const {
  ApReal r(Raw{}, mpfr_get_prec(value_));
  mpfr_neg(r.value_, value_, kRound);
  return r;
}

ApReal& ApReal::operator+=(const ApReal& rhs) { return *this = *this + rhs; }
ApReal& ApReal::operator-=(const ApReal& rhs) { return *this = *this - rhs; }
ApReal& ApReal::operator*=(const ApReal& rhs) { return *this = *this * rhs; }
ApReal& ApReal::operator/=(const ApReal& rhs) { return *this = *this / rhs; }

ApReal operator+(const ApReal& a, const ApReal& b) {
  ApReal r(ApReal::Raw{}, joint(a, b));
  mpfr_add(r.value_, a.value_, b.value_, kRound);
  return r;
}

ApReal operator-(const ApReal& a, const ApReal& b) {
  ApReal r(ApReal::Raw{}, joint(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, kRound);
  return r;
}

ApReal operator*(const ApReal& a, const ApReal& b) {
  ApReal r(ApReal::Raw{}, joint(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, kRound);
  return r;
}

ApReal operator/(const ApReal& a, const ApReal& b) {
  ApReal r(ApReal::Raw{}, joint(a, b));
  mpfr_div(r.value_, a.value_, b.value_, kRound);
  return r;
}

ApReal operator+(const ApReal& a, long b) {
  ApReal r(ApReal::Raw{}, mpfr_get_prec(a.value_));
  mpfr_add_si(r.value_, a.value_, b, kRound);
  return r;
}

ApReal operator-(const ApReal& a, long b) {
  ApReal r(ApReal::Raw{}, mpfr_get_prec(a.value_));
  mpfr_sub_si(r.value_, a.value_, b, kRound);
  return r;
}

ApReal operator*(const ApReal& a, long b) {
  ApReal r(ApReal::Raw{}, mpfr_get_prec(a.value_));
  mpfr_mul_si(r.value_, a.value_, b, kRound);
  return r;
}

ApReal operator/(const ApReal& a, long b) {
  ApReal r(ApReal::Raw{}, mpfr_get_prec(a.value_));
  mpfr_div_si(r.value_, a.value_, b, kRound);
  return r;
}

ApReal operator-(long a, const ApReal& b) {
  ApReal r(ApReal::Raw{}, mpfr_get_prec(b.value_));
  mpfr_si_sub(r.value_, a, b.value_, kRound);
  return r;
}

ApReal operator/(long a, const ApReal& b) {
  ApReal r(ApReal::Raw{}, mpfr_get_prec(b.value_));
  mpfr_si_div(r.value_, a, b.value_, kRound);
  return r;
}

bool operator==(const ApReal& a, const ApReal& b) {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const ApReal& a, const ApReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool operator==(const ApReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }

std::partial_ordering operator<=>(const ApReal& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define HOLO_UNARY(name, fn)                          \
  ApReal name(const ApReal& x) {                      \
    ApReal r = ApReal::zero(x.precision());           \
    fn(r.get(), x.get(), kRound);                     \
    return r;                                         \
  }

HOLO_UNARY(abs, mpfr_abs)
HOLO_UNARY(sqrt, mpfr_sqrt)
HOLO_UNARY(exp, mpfr_exp)
HOLO_UNARY(log, mpfr_log)
HOLO_UNARY(sin, mpfr_sin)
HOLO_UNARY(cos, mpfr_cos)
#undef HOLO_UNARY

ApReal atan2(const ApReal& y, const ApReal& x) {
  ApReal r = ApReal::zero(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), kRound);
  return r;
}

ApReal pow(const ApReal& x, long n) {
  ApReal r = ApReal::zero(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, kRound);
  return r;
}

ApReal pow(const ApReal& x, const ApReal& y) {
  ApReal r = ApReal::zero(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), kRound);
  return r;
}

ApReal ldexp(const ApReal& x, long n) {
  ApReal r = ApReal::zero(x.precision());
  mpfr_mul_2si(r.get(), x.get(), n, kRound);
  return r;
}

ApReal frac(const ApReal& x) {
  ApReal r = ApReal::zero(x.precision());
  mpfr_frac(r.get(), x.get(), kRound);
  if (r.sign() < 0) r = r + 1;
  return r;
}

const ApReal& max(const ApReal& a, const ApReal& b) { return (a < b) ? b : a; }
const ApReal& min(const ApReal& a, const ApReal& b) { return (b < a) ? b : a; }

std::ostream& operator<<(std::ostream& os, const ApReal& x) { return os << x.to_string(); }

// ------------------------------------------------------------- ApComplex

ApComplex::ApComplex(int precision_bits)
    : re_(ApReal::zero(precision_bits)), im_(ApReal::zero(precision_bits)) {}

ApComplex::ApComplex(long re, long im, int precision_bits)
    : re_(re, precision_bits), im_(im, precision_bits) {}

ApComplex::ApComplex(ApReal re, ApReal im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.precision() < im_.precision()) re_ = re_.with_precision(im_.precision());
  if (im_.precision() < re_.precision()) im_ = im_.with_precision(re_.precision());
}

ApComplex::ApComplex(ApReal re) : re_(std::move(re)), im_(ApReal::zero(re_.precision())) {}

ApComplex ApComplex::polar(const ApReal& r, const ApReal& angle) {
  return {r * cos(angle), r * sin(angle)};
}

ApComplex ApComplex::with_precision(int precision_bits) const {
  return {re_.with_precision(precision_bits), im_.with_precision(precision_bits)};
}

ApComplex& ApComplex::operator+=(const ApComplex& rhs) { return *this = *this + rhs; }
ApComplex& ApComplex::operator-=(const ApComplex& rhs) { return *this = *this - rhs; }
ApComplex& ApComplex::operator*=(const ApComplex& rhs) { return *this = *this * rhs; }
ApComplex& ApComplex::operator/=(const ApComplex& rhs) { return *this = *this / rhs; }

ApComplex operator+(const ApComplex& a, const ApComplex& b) {
  return {a.re_ + b.re_, a.im_ + b.im_};
}

ApComplex operator-(const ApComplex& a, const ApComplex& b) {
  return {a.re_ - b.re_, a.im_ - b.im_};
}

ApComplex operator*(const ApComplex& a, const ApComplex& b) {
  const auto bits = joint(a.re_, b.re_);
  ApReal re = ApReal::zero(static_cast<int>(bits));
  ApReal im = ApReal::zero(static_cast<int>(bits));
  // Single rounding for ac - bd and ad + bc.
  mpfr_fmms(re.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), kRound);
  mpfr_fmma(im.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), kRound);
  return {std::move(re), std::move(im)};
}

ApComplex operator/(const ApComplex& a, const ApComplex& b) {
  const int bits = static_cast<int>(joint(a.re_, b.re_));
  ApReal den = ApReal::zero(bits);
  ApReal re = ApReal::zero(bits);
  ApReal im = ApReal::zero(bits);
  mpfr_fmma(den.get(), b.re_.get(), b.re_.get(), b.im_.get(), b.im_.get(), kRound);
  mpfr_fmma(re.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), kRound);
  mpfr_fmms(im.get(), a.im_.get(), b.re_.get(), a.re_.get(), b.im_.get(), kRound);
  return {re / den, im / den};
}

ApComplex operator*(const ApComplex& a, const ApReal& b) { return {a.re_ * b, a.im_ * b}; }
ApComplex operator/(const ApComplex& a, const ApReal& b) { return {a.re_ / b, a.im_ / b}; }
ApComplex operator+(const ApComplex& a, long b) { return {a.re_ + b, a.im_}; }
ApComplex operator-(const ApComplex& a, long b) { return {a.re_ - b, a.im_}; }
ApComplex operator*(const ApComplex& a, long b) { return {a.re_ * b, a.im_ * b}; }
ApComplex operator/(const ApComplex& a, long b) { return {a.re_ / b, a.im_ / b}; }

ApComplex operator/(long a, const ApComplex& b) {
  return ApComplex(a, 0, b.precision()) / b;
}

bool operator==(const ApComplex& a, const ApComplex& b) {
  return a.re_ == b.re_ && a.im_ == b.im_;
}

ApComplex conj(const ApComplex& z) { return {z.real(), -z.imag()}; }

ApReal norm(const ApComplex& z) {
  ApReal r = ApReal::zero(z.precision());
  mpfr_fmma(r.get(), z.real().get(), z.real().get(), z.imag().get(), z.imag().get(), kRound);
  return r;
}

ApReal abs(const ApComplex& z) {
  ApReal r = ApReal::zero(z.precision());
  mpfr_hypot(r.get(), z.real().get(), z.imag().get(), kRound);
  return r;
}

ApReal arg(const ApComplex& z) { return atan2(z.imag(), z.real()); }

ApComplex pow(const ApComplex& z, long n) {
  if (n < 0) return 1 / pow(z, -n);
  ApComplex result(1, 0, z.precision());
  ApComplex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

ApComplex sqrt(const ApComplex& z) {
  if (z.is_zero()) return z;
  const ApReal r = abs(z);
  ApReal re = sqrt((r + z.real()) / 2);
  ApReal im = sqrt((r - z.real()) / 2);
  if (z.imag().sign() < 0) im = -im;
  return {std::move(re), std::move(im)};
}

ApComplex exp(const ApComplex& z) { return ApComplex::polar(exp(z.real()), z.imag()); }

std::ostream& operator<<(std::ostream& os, const ApComplex& z) {
  return os << '(' << z.real() << ", " << z.imag() << ')';
}

ApComplex make_complex(std::string_view re_decimal, std::string_view im_decimal,
                       int precision_bits) {
  require_precision(precision_bits);
  return {ApReal::parse(re_decimal, precision_bits), ApReal::parse(im_decimal, precision_bits)};
}

// ------------------------------------------------------------- Tolerance

Tolerance Tolerance::for_precision(int precision_bits) {
  const ApReal eps = ApReal::pow2(-(precision_bits / 2), precision_bits);
  return {eps, eps};
}

Tolerance Tolerance::absolute(const ApReal& eps) {
  // rel_eps must stay strictly positive
  return {ApReal::pow2(-eps.precision(), eps.precision()), eps};
}

bool approx_eq(const ApComplex& a, const ApComplex& b, const Tolerance& tol) {
  const ApReal gap = abs(a - b);
  return gap <= tol.abs_eps + tol.rel_eps * max(abs(a), abs(b));
}

ApReal relative_error(const ApComplex& a, const ApComplex& b) {
  const ApReal gap = abs(a - b);
  const ApReal scale = max(abs(a), abs(b));
  if (scale.is_zero()) return gap;
  return gap / scale;
}

}  // namespace holo
