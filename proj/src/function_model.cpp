#include "holo/function_model.hpp"

#include <sstream>
#include <string>

#include "holo/error.hpp"
#include "holo/random.hpp"

namespace holo {

ApReal norm2(const Point2& z) { return sqrt(norm(z.z1) + norm(z.z2)); }

TaylorSeries2::TaylorSeries2(std::size_t max_order, int precision_bits)
    : max_order_(max_order),
      precision_(precision_bits),
      coeffs_((max_order + 1) * (max_order + 2) / 2, ApComplex(precision_bits)) {
  require_precision(precision_bits);
}

std::size_t TaylorSeries2::index(std::size_t k, std::size_t l) const {
  const std::size_t m = k + l;
  if (m > max_order_) {
    throw Error(ErrorCode::domain, "coefficient (" + std::to_string(k) + "," + std::to_string(l) +
                                       ") exceeds max order " + std::to_string(max_order_));
  }
  return m * (m + 1) / 2 + k;
}

const ApComplex& TaylorSeries2::coeff(std::size_t k, std::size_t l) const {
  return coeffs_[index(k, l)];
}

void TaylorSeries2::set_coeff(std::size_t k, std::size_t l, ApComplex value) {
  coeffs_[index(k, l)] = value.with_precision(precision_);
}

long TaylorSeries2::degree() const {
  for (std::size_t m = max_order_ + 1; m-- > 0;) {
    for (std::size_t k = 0; k <= m; ++k) {
      if (!coeff(k, m - k).is_zero()) return static_cast<long>(m);
    }
  }
  return -1;
}

TaylorSeries2 TaylorSeries2::with_precision(int precision_bits) const {
  TaylorSeries2 out(max_order_, precision_bits);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out.coeffs_[i] = coeffs_[i].with_precision(precision_bits);
  }
  return out;
}

TaylorSeries2 TaylorSeries2::truncated(std::size_t max_order) const {
  TaylorSeries2 out(max_order, precision_);
  const std::size_t top = std::min(max_order, max_order_);
  for (std::size_t m = 0; m <= top; ++m) {
    for (std::size_t k = 0; k <= m; ++k) out.set_coeff(k, m - k, coeff(k, m - k));
  }
  return out;
}

TaylorSeries2 operator+(const TaylorSeries2& a, const TaylorSeries2& b) {
  const auto& big = a.max_order_ >= b.max_order_ ? a : b;
  const auto& small = a.max_order_ >= b.max_order_ ? b : a;
  TaylorSeries2 out(big.max_order_, std::max(a.precision_, b.precision_));
  for (std::size_t i = 0; i < big.coeffs_.size(); ++i) {
    out.coeffs_[i] = i < small.coeffs_.size() ? big.coeffs_[i] + small.coeffs_[i] : big.coeffs_[i];
  }
  return out;
}

TaylorSeries2 operator*(const ApComplex& c, const TaylorSeries2& f) {
  TaylorSeries2 out(f.max_order_, std::max(f.precision_, c.precision()));
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i) out.coeffs_[i] = c * f.coeffs_[i];
  return out;
}

ApComplex LineRestriction::operator()(const ApComplex& v) const {
  ApComplex acc(std::max(v.precision(), slope.precision()));
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + *it;
  return acc;
}

ApComplex eval2(const TaylorSeries2& f, const Point2& z) {
  const int bits = std::max(f.precision(), z.precision());
  const std::size_t order = f.max_order();
  std::vector<ApComplex> pow1{ApComplex(1, 0, bits)};
  std::vector<ApComplex> pow2{ApComplex(1, 0, bits)};
  for (std::size_t i = 1; i <= order; ++i) {
    pow1.push_back(pow1.back() * z.z1);
    pow2.push_back(pow2.back() * z.z2);
  }
  ApComplex sum(bits);
  for (std::size_t m = 0; m <= order; ++m) {
    for (std::size_t k = 0; k <= m; ++k) {
      const auto& a = f.coeff(k, m - k);
      if (!a.is_zero()) sum += a * pow1[k] * pow2[m - k];
    }
  }
  return sum;
}

LineRestriction restrict_to_line(const TaylorSeries2& f, const ApComplex& eta) {
  const int bits = std::max(f.precision(), eta.precision());
  LineRestriction out{eta, {}};
  out.coeffs.reserve(f.max_order() + 1);
  for (std::size_t m = 0; m <= f.max_order(); ++m) {
    // Horner in eta over k for the degree-m block
    ApComplex c(bits);
    for (std::size_t k = m + 1; k-- > 0;) c = c * eta + f.coeff(k, m - k);
    out.coeffs.push_back(std::move(c));
  }
  return out;
}

LineProjection project_to_line(const ApComplex& eta, const Point2& z) {
  const ApComplex w = (z.z2 + conj(eta) * z.z1) / (norm(eta) + 1);
  return {w, {eta * w, w}};
}

namespace series {

namespace {

std::vector<ApReal> inverse_factorials(std::size_t n, int bits) {
  std::vector<ApReal> out{ApReal(1, bits)};
  for (std::size_t i = 1; i <= n; ++i) out.push_back(out.back() / static_cast<long>(i));
  return out;
}

}  // namespace

TaylorSeries2 exp_sum(std::size_t max_order, int precision_bits) {
  TaylorSeries2 f(max_order, precision_bits);
  const auto inv = inverse_factorials(max_order, precision_bits);
  for (std::size_t m = 0; m <= max_order; ++m) {
    for (std::size_t k = 0; k <= m; ++k) f.set_coeff(k, m - k, ApComplex(inv[k] * inv[m - k]));
  }
  return f;
}

TaylorSeries2 exp_cos(std::size_t max_order, int precision_bits) {
  TaylorSeries2 f(max_order, precision_bits);
  const auto inv = inverse_factorials(max_order, precision_bits);
  for (std::size_t m = 0; m <= max_order; ++m) {
    for (std::size_t l = 0; l <= m; l += 2) {
      ApReal a = inv[m - l] * inv[l];
      if ((l / 2) % 2 == 1) a = -a;
      f.set_coeff(m - l, l, ApComplex(std::move(a)));
    }
  }
  return f;
}

TaylorSeries2 random_polynomial(std::size_t degree, std::uint64_t seed, int precision_bits) {
  Rng rng(seed);
  TaylorSeries2 f(degree, precision_bits);
  for (std::size_t m = 0; m <= degree; ++m) {
    for (std::size_t k = 0; k <= m; ++k) {
      const double re = rng.uniform(-1, 1);
      const double im = rng.uniform(-1, 1);
      f.set_coeff(k, m - k, ApComplex(ApReal::from_double(re, precision_bits),
                                      ApReal::from_double(im, precision_bits)));
    }
  }
  return f;
}

TaylorSeries2 parse_inline(std::string_view spec, int precision_bits) {
  struct Term {
    std::size_t k, l;
    std::string re, im;
  };
  std::vector<Term> terms;
  std::size_t order = 0;
  std::stringstream all{std::string(spec)};
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    std::stringstream fields(item);
    std::vector<std::string> parts;
    std::string part;
    while (std::getline(fields, part, ',')) parts.push_back(part);
    if (parts.size() != 4) {
      throw Error(ErrorCode::configuration,
                  "inline polynomial term '" + item + "' must be k,l,re,im");
    }
    Term t;
    try {
      t.k = std::stoul(parts[0]);
      t.l = std::stoul(parts[1]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::configuration, "bad exponent in inline polynomial term '" + item + "'");
    }
    t.re = parts[2];
    t.im = parts[3];
    order = std::max(order, t.k + t.l);
    terms.push_back(std::move(t));
  }
  if (terms.empty()) throw Error(ErrorCode::configuration, "inline polynomial has no terms");
  TaylorSeries2 f(order, precision_bits);
  for (const auto& t : terms) {
    f.set_coeff(t.k, t.l, f.coeff(t.k, t.l) + make_complex(t.re, t.im, precision_bits));
  }
  return f;
}

}  // namespace series

}  // namespace holo
