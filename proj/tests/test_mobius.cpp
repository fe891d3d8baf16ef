#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holo/error.hpp"
#include "holo/interpolation.hpp"
#include "holo/mobius.hpp"
#include "support.hpp"

using namespace holo;
using namespace holo::test;

namespace {

constexpr int kBits = 256;
ApComplex c(long re, long im = 0) { return ApComplex(re, im, kBits); }

const ApReal& tiny() {
  static const ApReal t = ApReal::pow2(-200, kBits);
  return t;
}

NodeSequence integers(long n) {
  std::vector<ApComplex> out;
  for (long j = 1; j <= n; ++j) out.push_back(c(j));
  return NodeSequence(std::move(out));
}

Point2 random_point(Rng& rng, double r) { return {random_ap_complex(rng, r, kBits), random_ap_complex(rng, r, kBits)}; }

}  // namespace

TEST_CASE("context examples") {
  const auto ctx = make_context(integers(10), c(0, 1));
  CHECK(ctx.separation() >= 1);
  CHECK(ctx.separation() == sqrt(ApReal(2, kBits)));
  CHECK(unitarity_residual(ctx.unitary()) < tiny());

  const auto zero = make_context(integers(3), c(0));
  CHECK(zero.separation() == 1);
  const Mat2& u = zero.unitary();
  CHECK(u[0][0].is_zero());
  CHECK(u[0][1] == c(1));
  CHECK(u[1][0] == c(1));
  CHECK(u[1][1].is_zero());

  try {
    make_context(integers(3), c(2));
    FAIL("accepted eta_inf on a node");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::separation);
  }

  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto r = make_context(integers(2), random_ap_complex(rng, 5, kBits));
    CHECK(unitarity_residual(r.unitary()) < tiny());
    CHECK(unitarity_residual(r.unitary_adjoint()) < tiny());
  }
}

TEST_CASE("theta examples") {
  const NodeSequence origin({c(0)});
  const auto ctx = make_context(origin, c(0, 1));
  CHECK(abs(ctx.theta(c(0)) - c(0, 1)) < tiny());

  Rng rng(2);
  const NodeSequence r = random_disc_nodes(10, 3, 3, kBits);
  const auto zero = make_context(r, c(0));
  const NodeSequence th = to_bounded(zero, r);
  for (std::size_t j = 0; j < r.size(); ++j) CHECK(abs(th[j] - 1 / r[j]) <= tiny() * abs(th[j]));
  CHECK(zero.theta_bound() == 1 / zero.separation());
}

TEST_CASE("theta bound for eta_j = j and eta_inf = i") {
  const NodeSequence nodes = integers(50);
  const auto ctx = make_context(nodes, c(0, 1));
  const ApReal bound = ctx.theta_bound();
  // max((1 + 2)/sqrt 2, 2 (1 + 1/2))
  CHECK(abs(bound - 3) < tiny());
  ApReal worst = ApReal::zero(kBits);
  for (const auto& theta : to_bounded(ctx, nodes)) worst = max(worst, abs(theta));
  CHECK(worst <= bound);
  // theta_j = -i (j + i)/(j - i) has modulus one
  for (const auto& theta : to_bounded(ctx, nodes)) CHECK(abs(abs(theta) - 1) < tiny());
}

TEST_CASE("theta bound on random configurations") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const NodeSequence nodes = random_disc_nodes(30, 4, 100 + trial, kBits);
    const ApComplex eta_inf = trial % 5 == 0 ? c(0) : random_ap_complex(rng, 5, kBits);
    bool clash = false;
    for (const auto& z : nodes) clash = clash || z == eta_inf;
    if (clash) continue;
    const auto ctx = make_context(nodes, eta_inf);
    // for eta_inf = 0 the bound is attained by the nearest node, up to rounding
    const ApReal bound = ctx.theta_bound() * (1 + ApReal::pow2(-240, kBits));
    for (const auto& theta : to_bounded(ctx, nodes)) CHECK(abs(theta) <= bound);
  }
}

TEST_CASE("homography round trip and line mapping") {
  Rng rng(5);
  const NodeSequence nodes = random_disc_nodes(20, 3, 6, kBits);
  const auto ctx = make_context(nodes, ApComplex(ap("2.5"), ap("-3")));
  const NodeSequence th = to_bounded(ctx, nodes);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    CHECK(abs(ctx.theta_inverse(th[j]) - nodes[j]) < tiny());
    // U sends (eta v, v) onto the theta line
    const ApComplex v = random_ap_complex(rng, 1, kBits);
    const Point2 image = ctx.unitary() * Point2{nodes[j] * v, v};
    CHECK(abs(image.z1 - th[j] * image.z2) < tiny());
  }
}

TEST_CASE("line factor identity") {
  Rng rng(6);
  const NodeSequence nodes = random_disc_nodes(10, 2, 7, kBits);
  const auto ctx = make_context(nodes, ApComplex(ap("-1"), ap("2.25")));
  for (const auto& eta : nodes) {
    CHECK(abs(line_factor_check(ctx, eta, {ctx.theta(eta), c(1)})) < tiny());
    CHECK(line_factor_check(ctx, eta, {c(0), c(0)}).is_zero());
    for (int i = 0; i < 10; ++i) CHECK(abs(line_factor_check(ctx, eta, random_point(rng, 3))) < tiny());
  }
  // both sides vanish on the theta line, so it is not a trivially zero check
  const Mat2 adj = ctx.unitary_adjoint();
  const Point2 off{c(1), c(1)};
  const Point2 pulled = adj * off;
  CHECK(abs(pulled.z1 - nodes[0] * pulled.z2) > ApReal::pow2(-20, kBits));
}

TEST_CASE("unitary preserves norms") {
  Rng rng(7);
  const auto ctx = make_context(integers(4), ApComplex(ap("0.3"), ap("0.7")));
  for (int i = 0; i < 100; ++i) {
    const Point2 z = random_point(rng, 10);
    CHECK(abs(norm2(ctx.unitary() * z) - norm2(z)) <= tiny() * norm2(z));
  }
}

TEST_CASE("pushforward") {
  TaylorSeries2 one(3, kBits);
  one.set_coeff(0, 0, c(1));
  const auto ctx = make_context(integers(2), c(0, 1));
  const TaylorSeries2 p1 = pushforward(one, ctx);
  CHECK(p1.max_order() == 3);
  CHECK(abs(p1.coeff(0, 0) - c(1)) < tiny());
  CHECK(p1.degree() == 0);

  TaylorSeries2 z1(1, kBits);
  z1.set_coeff(1, 0, c(1));
  const TaylorSeries2 swapped = pushforward(z1, make_context(integers(2), c(0)));
  CHECK(swapped.coeff(1, 0).is_zero());
  CHECK(swapped.coeff(0, 1) == c(1));

  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const TaylorSeries2 f = series::random_polynomial(8, 50 + trial, kBits);
    const auto r = make_context(integers(3), random_ap_complex(rng, 3, kBits));
    const TaylorSeries2 g = pushforward(f, r);
    CHECK(g.max_order() == f.max_order());
    const Mat2 adj = r.unitary_adjoint();
    for (int i = 0; i < 5; ++i) {
      const Point2 zeta = random_point(rng, 1);
      CHECK(relative_error(eval2(g, zeta), eval2(f, adj * zeta)) < ApReal::pow2(-190, kBits));
    }
  }
}

TEST_CASE("reduction coherence for small N") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    const NodeSequence nodes = random_disc_nodes(n, 2, 200 + trial, kBits);
    const auto ctx = make_context(nodes, suggest_eta_inf(nodes));
    const TaylorSeries2 f = series::random_polynomial(n + 4, 300 + trial, kBits);
    const Point2 z = random_point(rng, 0.5);
    const ApComplex rn = eval_RN_lagrange(f, nodes, n, z);
    CAPTURE(trial);
    CHECK(abs(reduction_coherence(f, nodes, n, ctx, z)) <= ApReal::pow2(-170, kBits) * max(abs(rn), ApReal(1, kBits)));
  }
}

TEST_CASE("suggested eta_inf is away from the nodes") {
  const NodeSequence nodes = integers(10);
  const ApComplex e = suggest_eta_inf(nodes);
  const auto ctx = make_context(nodes, e);
  CHECK(ctx.separation() >= ap("0.9"));
  CHECK(e == suggest_eta_inf(nodes));
  const NodeSequence single({c(3, 4)});
  CHECK(make_context(single, suggest_eta_inf(single)).separation() > 0);
}
