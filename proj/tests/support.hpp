#pragma once

// Independent oracles shared by the test binaries: exact rational complex
// arithmetic, brute-force enumeration and a plain Lagrange divided difference.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holo/precision.hpp"
#include "holo/random.hpp"

namespace holo::test {

struct QComplex {
  mpq_class re;
  mpq_class im;

  QComplex() = default;
  QComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}

  friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QComplex operator/(const QComplex& a, const QComplex& b) {
    const mpq_class d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
  bool is_zero() const { return re == 0 && im == 0; }
};

inline ApReal to_ap(const mpq_class& q, int bits) {
  ApReal out(0, bits);
  mpfr_set_q(out.get(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

inline ApComplex to_ap(const QComplex& z, int bits) { return {to_ap(z.re, bits), to_ap(z.im, bits)}; }

/// Random Gaussian rational with numerators in [-span, span] over `den`.
inline QComplex random_rational(Rng& rng, long span, long den) {
  mpq_class re(rng.integer(-span, span), den);
  mpq_class im(rng.integer(-span, span), den);
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

/// `count` pairwise-distinct random rational nodes.
inline std::vector<QComplex> distinct_rational_nodes(Rng& rng, std::size_t count, long span, long den) {
  std::vector<QComplex> out;
  while (out.size() < count) {
    QComplex z = random_rational(rng, span, den);
    bool fresh = true;
    for (const auto& w : out) fresh = fresh && !(w == z);
    if (fresh) out.push_back(std::move(z));
  }
  return out;
}

/// sum_k c_k z^k, exact.
inline QComplex eval_poly(const std::vector<QComplex>& c, const QComplex& z) {
  QComplex acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Number of tuples n >= l_1 >= ... >= l_p >= 0 by enumeration.
inline std::uint64_t brute_force_tuples(unsigned n, unsigned p) {
  if (p == 0) return 1;
  std::uint64_t total = 0;
  for (unsigned l = 0; l <= n; ++l) total += brute_force_tuples(l, p - 1);
  return total;
}

/// h[x_0, ..., x_n] = sum_k h(x_k) / prod_{j != k} (x_k - x_j), evaluated
/// directly at the given precision.
inline ApComplex lagrange_divided_difference(const std::function<ApComplex(const ApComplex&)>& h,
                                             const std::vector<ApComplex>& x, int bits) {
  ApComplex acc(bits);
  for (std::size_t k = 0; k < x.size(); ++k) {
    ApComplex den(1, 0, bits);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j != k) den *= x[k].with_precision(bits) - x[j].with_precision(bits);
    }
    acc += h(x[k].with_precision(bits)) / den;
  }
  return acc;
}

inline ApReal ap(const char* decimal, int bits = kDefaultPrecision) { return ApReal::parse(decimal, bits); }

inline ApComplex random_ap_complex(Rng& rng, double radius, int bits) {
  return {ApReal::from_double(rng.uniform(-radius, radius), bits),
          ApReal::from_double(rng.uniform(-radius, radius), bits)};
}

}  // namespace holo::test
