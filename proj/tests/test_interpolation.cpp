#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <utility>

#include "holo/criterion.hpp"
#include "holo/error.hpp"
#include "holo/interpolation.hpp"
#include "support.hpp"

using namespace holo;
using namespace holo::test;

namespace {

constexpr int kBits = 256;
ApComplex c(long re, long im = 0) { return ApComplex(re, im, kBits); }
Point2 pt(const ApComplex& a, const ApComplex& b) { return {a, b}; }

// Exact-rational model of a truncated series and the interpolant, written
// straight from the defining sums.
struct QSeries {
  std::size_t order = 0;
  std::map<std::pair<std::size_t, std::size_t>, QComplex> a;

  QComplex coeff(std::size_t k, std::size_t l) const {
    auto it = a.find({k, l});
    return it == a.end() ? QComplex() : it->second;
  }
  TaylorSeries2 to_series() const {
    TaylorSeries2 f(order, kBits);
    for (const auto& [kl, v] : a) f.set_coeff(kl.first, kl.second, to_ap(v, kBits));
    return f;
  }
};

QComplex qconj(const QComplex& z) { return {z.re, -z.im}; }
QComplex qpow(const QComplex& z, std::size_t n) {
  QComplex out(1);
  for (std::size_t i = 0; i < n; ++i) out = out * z;
  return out;
}

QSeries random_qseries(Rng& rng, std::size_t order) {
  QSeries f;
  f.order = order;
  for (std::size_t m = 0; m <= order; ++m) {
    for (std::size_t k = 0; k <= m; ++k) f.a[{k, m - k}] = random_rational(rng, 12, 7);
  }
  return f;
}

QComplex q_eval(const QSeries& f, const QComplex& z1, const QComplex& z2) {
  QComplex acc;
  for (const auto& [kl, v] : f.a) acc = acc + v * qpow(z1, kl.first) * qpow(z2, kl.second);
  return acc;
}

QComplex q_line_coeff(const QSeries& f, std::size_t m, const QComplex& eta) {
  QComplex acc;
  for (std::size_t k = 0; k <= m; ++k) acc = acc + f.coeff(k, m - k) * qpow(eta, k);
  return acc;
}

QComplex q_w(const QComplex& eta, const QComplex& z1, const QComplex& z2) {
  return (z2 + qconj(eta) * z1) / (QComplex(1) + eta * qconj(eta));
}

// nodes are 0-based here: eta[0] is eta_1
QComplex q_EN(const QSeries& f, const std::vector<QComplex>& eta, std::size_t n, const QComplex& z1,
              const QComplex& z2) {
  QComplex total;
  for (std::size_t p = 0; p < n; ++p) {
    QComplex outer(1);
    for (std::size_t j = p + 1; j < n; ++j) outer = outer * (z1 - eta[j] * z2);
    QComplex inner;
    for (std::size_t q = p; q < n; ++q) {
      QComplex den(1);
      for (std::size_t j = p; j < n; ++j) {
        if (j != q) den = den * (eta[q] - eta[j]);
      }
      const QComplex factor = (QComplex(1) + eta[p] * qconj(eta[q])) / (QComplex(1) + eta[q] * qconj(eta[q])) / den;
      const QComplex w = q_w(eta[q], z1, z2);
      QComplex sum;
      // 1-based p' = p + 1, so m runs from N - p' = n - p - 1
      for (std::size_t m = n - p - 1; m <= f.order; ++m) {
        sum = sum + qpow(w, m - (n - p - 1)) * q_line_coeff(f, m, eta[q]);
      }
      inner = inner + factor * sum;
    }
    total = total + outer * inner;
  }
  return total;
}

QComplex q_RN(const QSeries& f, const std::vector<QComplex>& eta, std::size_t n, const QComplex& z1,
              const QComplex& z2) {
  QComplex total;
  for (std::size_t p = 0; p < n; ++p) {
    QComplex lag(1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != p) lag = lag * (z1 - eta[j] * z2) / (eta[p] - eta[j]);
    }
    const QComplex w = q_w(eta[p], z1, z2);
    QComplex sum;
    for (std::size_t m = n; m <= f.order; ++m) {
      for (std::size_t k = 0; k <= m; ++k) sum = sum + f.coeff(k, m - k) * qpow(eta[p], k) * qpow(w, m - n + 1);
    }
    total = total + lag * sum;
  }
  return total;
}

NodeSequence to_nodes(const std::vector<QComplex>& q) {
  std::vector<ApComplex> out;
  for (const auto& z : q) out.push_back(to_ap(z, kBits));
  return NodeSequence(std::move(out));
}

TaylorSeries2 monomial(std::size_t k, std::size_t l, std::size_t order) {
  TaylorSeries2 f(order, kBits);
  f.set_coeff(k, l, c(1));
  return f;
}

const ApReal& tiny() {
  static const ApReal t = ApReal::pow2(-200, kBits);
  return t;
}

NodeSequence roots_of_unity(std::size_t n) {
  std::vector<ApComplex> out;
  const ApReal two_pi = ApReal::pi(kBits) * 2;
  for (std::size_t k = 0; k < n; ++k) out.push_back(ApComplex::polar(ApReal(1, kBits), two_pi * static_cast<long>(k) / static_cast<long>(n)));
  return NodeSequence(std::move(out));
}

}  // namespace

TEST_CASE("lagrange_monomial examples") {
  const NodeSequence nodes({c(1), c(-1)});
  CHECK(lagrange_monomial(nodes, 2, 0, pt(c(2), c(1))) == ApComplex(ap("1.5"), ApReal::zero(kBits)));
  CHECK(lagrange_monomial(nodes, 1, 0, pt(c(7, 3), c(-2))) == c(1));

  Rng rng(21);
  const NodeSequence r = to_nodes(distinct_rational_nodes(rng, 6, 20, 7));
  const ApComplex v(ap("0.75"), ap("-1.25"));
  for (std::size_t p = 0; p < 6; ++p) {
    for (std::size_t q = 0; q < 6; ++q) {
      const ApComplex got = lagrange_monomial(r, 6, q, pt(r[p] * v, v));
      const ApComplex want = p == q ? pow(v, 5) : c(0);
      CHECK(abs(got - want) < tiny());
    }
  }
}

TEST_CASE("eval_EN examples") {
  Rng rng(22);
  const NodeSequence nodes = to_nodes(distinct_rational_nodes(rng, 5, 20, 7));
  TaylorSeries2 one(0, kBits);
  one.set_coeff(0, 0, c(1));
  for (std::size_t n = 1; n <= 5; ++n) CHECK(abs(eval_EN(one, nodes, n, pt(c(3, 1), c(-1, 2))) - c(1)) < tiny());

  TaylorSeries2 sum(1, kBits);
  sum.set_coeff(1, 0, c(1));
  sum.set_coeff(0, 1, c(1));
  const NodeSequence pm({c(1), c(-1)});
  for (int i = 0; i < 10; ++i) {
    const Point2 z{random_ap_complex(rng, 2, kBits), random_ap_complex(rng, 2, kBits)};
    CHECK(abs(eval_EN(sum, pm, 2, z) - (z.z1 + z.z2)) < tiny());
  }

  const NodeSequence zero({c(0)});
  CHECK(eval_EN(monomial(2, 0, 2), zero, 1, pt(c(3), c(4))).is_zero());

  try {
    eval_EN(sum, pm, 3, pt(c(1), c(1)));
    FAIL("accepted N > node count");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::arity);
  }
}

TEST_CASE("E_N and R_N against exact rational evaluation") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(0, 5));
    const std::size_t order = static_cast<std::size_t>(rng.integer(0, 8));
    const QSeries qf = random_qseries(rng, order);
    const auto qn = distinct_rational_nodes(rng, n, 15, 6);
    const QComplex z1 = random_rational(rng, 10, 9), z2 = random_rational(rng, 10, 9);
    const TaylorSeries2 f = qf.to_series();
    const NodeSequence nodes = to_nodes(qn);
    const Point2 z{to_ap(z1, kBits), to_ap(z2, kBits)};

    CAPTURE(trial);
    const QComplex en = q_EN(qf, qn, n, z1, z2);
    CHECK(relative_error(eval_EN(f, nodes, n, z), to_ap(en, kBits)) < tiny());
    const QComplex rn = q_RN(qf, qn, n, z1, z2);
    CHECK(relative_error(eval_RN_lagrange(f, nodes, n, z), to_ap(rn, kBits)) < tiny());
    CHECK(relative_error(eval_RN_newton(f, nodes, n, z), to_ap(rn, kBits)) < tiny());

    // the identity holds exactly in rational arithmetic
    QComplex tail;
    for (const auto& [kl, v] : qf.a) {
      if (kl.first + kl.second >= n) tail = tail + v * qpow(z1, kl.first) * qpow(z2, kl.second);
    }
    CHECK(en - rn + tail == q_eval(qf, z1, z2));
    CHECK(relative_error(eval_tail(f, n, z), to_ap(tail, kBits)) < tiny());
  }
}

TEST_CASE("R_N examples") {
  const NodeSequence zero({c(0)});
  CHECK(eval_RN_lagrange(monomial(2, 0, 2), zero, 1, pt(c(3), c(4))).is_zero());
  Rng rng(24);
  const NodeSequence nodes = to_nodes(distinct_rational_nodes(rng, 4, 20, 7));
  const TaylorSeries2 low = series::random_polynomial(3, 5, kBits);
  const Point2 z{c(1, 2), c(-3, 1)};
  CHECK(eval_RN_lagrange(low, nodes, 4, z).is_zero());
  CHECK(eval_RN_newton(low, nodes, 4, z).is_zero());

  // N = 1 is the kernel evaluated at the single node
  const TaylorSeries2 f = series::random_polynomial(6, 6, kBits);
  const ScalarFunction r1 = remainder_kernel(f, 1, z);
  CHECK(abs(eval_RN_newton(f, nodes, 1, z) - r1(nodes[0])) < tiny());
}

TEST_CASE("cross-form remainder on random instances") {
  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(0, 7));
    const std::size_t degree = static_cast<std::size_t>(rng.integer(static_cast<long>(n), 12));
    const TaylorSeries2 f = series::random_polynomial(degree, 100 + trial, kBits);
    const NodeSequence nodes = random_disc_nodes(n, 1.5, 200 + trial, kBits);
    const Point2 z{random_ap_complex(rng, 1, kBits), random_ap_complex(rng, 1, kBits)};
    const ApComplex lag = eval_RN_lagrange(f, nodes, n, z);
    const ApComplex newton = eval_RN_newton(f, nodes, n, z);
    CAPTURE(trial);
    CHECK(abs(lag - newton) <= ApReal::pow2(-180, kBits) * max(abs(lag), ApReal(1, kBits)) * condition_estimate(nodes, n));
  }
}

TEST_CASE("eval_tail examples") {
  const TaylorSeries2 f = series::random_polynomial(4, 7, kBits);
  const Point2 z{c(1, -1), c(2, 1)};
  CHECK(eval_tail(f, 5, z).is_zero());
  CHECK(abs(eval_tail(f, 0, z) - eval2(f, z)) < tiny());
  CHECK(eval_tail(monomial(2, 0, 2), 1, pt(c(3), c(0))) == c(9));
}

TEST_CASE("identity_report") {
  const NodeSequence zero({c(0)});
  const Point2 z{c(3, 1), c(-2)};
  const auto r0 = identity_report(monomial(2, 0, 2), zero, 1, z);
  CHECK(r0.value_EN.is_zero());
  CHECK(r0.value_RN_lagrange.is_zero());
  CHECK(r0.value_tail == z.z1 * z.z1);
  CHECK(r0.identity_residual.is_zero());

  const NodeSequence six = roots_of_unity(6);
  const TaylorSeries2 low = series::random_polynomial(3, 8, kBits);
  const auto r1 = identity_report(low, six, 4, z);
  CHECK(abs(r1.value_EN - r1.value_f) < tiny() * abs(r1.value_f));
  CHECK(r1.value_RN_lagrange.is_zero());
  CHECK(r1.value_tail.is_zero());

  const TaylorSeries2 f = series::random_polynomial(10, 9, kBits);
  const Point2 w{ApComplex(ap("0.3"), ApReal::zero(kBits)), ApComplex(ApReal::zero(kBits), ap("0.2"))};
  const auto r2 = identity_report(f, six, 4, w);
  CHECK(r2.n == 4);
  CHECK(r2.node_count == 6);
  CHECK(abs(r2.identity_residual) < ApReal::pow2(-128, kBits));
  CHECK(abs(r2.value_RN_lagrange - r2.value_RN_newton) < ApReal::pow2(-128, kBits));
  CHECK(r2.identity_residual == r2.value_EN - r2.value_RN_lagrange + r2.value_tail - r2.value_f);
  CHECK(r2.condition >= 1);
}

TEST_CASE("interpolation_check") {
  const NodeSequence nodes({c(1), c(2)});
  TaylorSeries2 f(2, kBits);
  f.set_coeff(1, 1, c(1));
  CHECK(abs(interpolation_check(f, nodes, 2, 0, c(1))) < tiny());

  Rng rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(0, 5));
    const TaylorSeries2 g = series::random_polynomial(static_cast<std::size_t>(rng.integer(0, 14)), 300 + trial, kBits);
    const NodeSequence r = random_disc_nodes(n + 2, 2, 400 + trial, kBits);
    CHECK(abs(interpolation_check(g, r, n, 0, c(0))) < tiny());
    const ApComplex v = random_ap_complex(rng, 1, kBits);
    for (std::size_t p = 0; p < n; ++p) {
      CAPTURE(trial);
      CAPTURE(p);
      CHECK(abs(interpolation_check(g, r, n, p, v)) < ApReal::pow2(-190, kBits) * condition_estimate(r, n));
    }
  }
}

TEST_CASE("polynomial reproduction") {
  Rng rng(27);
  for (std::size_t n = 1; n <= 8; ++n) {
    const TaylorSeries2 p = series::random_polynomial(n - 1, 500 + n, kBits);
    const NodeSequence nodes = random_disc_nodes(n, 2, 600 + n, kBits);
    for (int i = 0; i < 100; ++i) {
      const Point2 z{random_ap_complex(rng, 1, kBits), random_ap_complex(rng, 1, kBits)};
      const ApComplex fz = eval2(p, z);
      CHECK(abs(eval_EN(p, nodes, n, z) - fz) < ApReal::pow2(-190, kBits) * condition_estimate(nodes, n));
    }
  }
}

TEST_CASE("ExplicitInterpolant matches eval_EN and sees only line data") {
  const TaylorSeries2 f = series::random_polynomial(9, 10, kBits);
  const NodeSequence nodes = random_disc_nodes(5, 1, 11, kBits);
  const ExplicitInterpolant en(LineSamples(f, nodes, 5), 5);
  const Point2 z{c(1, 1), c(0, -1)};
  CHECK(abs(en(z) - eval_EN(f, nodes, 5, z)) < tiny());

  // two functions with the same restrictions give the same interpolant
  // (z_1 - eta_1 z_2)...(z_1 - eta_5 z_2) vanishes on all five lines
  std::vector<ApComplex> prod{c(1)};  // coefficients in z_1^k z_2^{5-k}
  for (const auto& eta : nodes) {
    std::vector<ApComplex> next(prod.size() + 1, c(0));
    for (std::size_t k = 0; k < prod.size(); ++k) {
      next[k + 1] += prod[k];
      next[k] -= eta * prod[k];
    }
    prod = std::move(next);
  }
  TaylorSeries2 h = f;
  for (std::size_t k = 0; k <= 5; ++k) h.set_coeff(k, 5 - k, h.coeff(k, 5 - k) + prod[k]);
  const ExplicitInterpolant eh(LineSamples(h, nodes, 5), 5);
  CHECK(abs(eh(z) - en(z)) < ApReal::pow2(-180, kBits));
  CHECK(abs(eval2(h, z) - eval2(f, z)) > ApReal::pow2(-20, kBits));
}

TEST_CASE("order sensitivity probe is deterministic") {
  const TaylorSeries2 f = series::exp_sum(12, kBits);
  const NodeSequence nodes = random_disc_nodes(5, 1, 12, kBits);
  const Point2 z{c(0), ApComplex(ap("0.25"), ApReal::zero(kBits))};
  const ApReal a = order_sensitivity(f, nodes, 5, z, 6, 99);
  CHECK(a == order_sensitivity(f, nodes, 5, z, 6, 99));
  CHECK(a.is_finite());
  // polynomials of low degree are reproduced in any order
  const TaylorSeries2 p = series::random_polynomial(3, 13, kBits);
  CHECK(order_sensitivity(p, nodes, 5, z, 6, 99) < ApReal::pow2(-180, kBits));
}

TEST_CASE("make_grid") {
  const auto grid = make_grid({0.5, 4, 3}, 1, kBits);
  REQUIRE(grid.size() == 19);
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(abs(abs(grid[i].z1) - ap("0.5")) < tiny());
    CHECK(abs(abs(grid[i].z2) - ap("0.5")) < tiny());
  }
  for (std::size_t i = 16; i < 19; ++i) {
    CHECK(abs(grid[i].z1) < ap("0.5"));
    CHECK(abs(grid[i].z2) < ap("0.5"));
  }
  const auto again = make_grid({0.5, 4, 3}, 1, kBits);
  CHECK(again[17].z1 == grid[17].z1);
}

TEST_CASE("geometric convergence on circle and line families") {
  const TaylorSeries2 f = series::exp_sum(40, kBits);
  const auto grid = make_grid({}, 0, kBits);
  const NodeSequence circle =
      generate_nodes(CircleFamily{c(0), ApReal(1, kBits)}, 24, 0, kBits);
  const NodeSequence line =
      generate_nodes(LineFamily{ApReal(0, kBits), ApReal(1, kBits), ApReal(0, kBits)}, 24, 0, kBits);
  for (const NodeSequence* nodes : {&circle, &line}) {
    const auto rows = convergence_table(f, *nodes, 4, 16, grid);
    REQUIRE(rows.size() == 13);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].sup_error < rows[i - 1].sup_error);
    // e(N+2)/e(N) <= 1/4 (1 + 0.5) for N = 8..14
    for (std::size_t n = 8; n <= 14; ++n) {
      CAPTURE(n);
      CHECK(rows[n + 2 - 4].sup_error / rows[n - 4].sup_error <= ap("0.375"));
    }
  }
}
