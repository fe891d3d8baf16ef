#include "holo/mobius.hpp"

#include "holo/error.hpp"
#include "holo/interpolation.hpp"

namespace holo {

Mat2 adjoint(const Mat2& m) {
  return {{{conj(m[0][0]), conj(m[1][0])}, {conj(m[0][1]), conj(m[1][1])}}};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return out;
}

Point2 operator*(const Mat2& m, const Point2& z) {
  return {m[0][0] * z.z1 + m[0][1] * z.z2, m[1][0] * z.z1 + m[1][1] * z.z2};
}

ApReal unitarity_residual(const Mat2& m) {
  const Mat2 product = m * adjoint(m);
  ApReal worst = ApReal::zero(product[0][0].precision());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) worst = max(worst, abs(product[i][j] - (i == j ? 1 : 0)));
  }
  return worst;
}

MobiusContext::MobiusContext(const NodeSequence& nodes, ApComplex eta_inf)
    : eta_inf_(std::move(eta_inf)) {
  const int bits = std::max(nodes.precision(), eta_inf_.precision());
  eta_inf_ = eta_inf_.with_precision(bits);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    ApReal gap = abs(nodes[j] - eta_inf_);
    if (gap.is_zero()) {
      throw Error(ErrorCode::separation,
                  "eta_inf coincides with node " + std::to_string(j + 1));
    }
    if (j == 0 || gap < separation_) separation_ = std::move(gap);
  }
  const ApReal scale = 1 / sqrt(norm(eta_inf_) + 1);
  const ApComplex one(1, 0, bits);
  unitary_ = {{{conj(eta_inf_) * scale, one * scale}, {one * scale, -eta_inf_ * scale}}};
}

ApComplex MobiusContext::theta(const ApComplex& eta) const {
  const ApComplex den = eta - eta_inf_;
  if (den.is_zero()) throw Error(ErrorCode::separation, "node coincides with eta_inf");
  return (conj(eta_inf_) * eta + 1) / den;
}

ApComplex MobiusContext::theta_inverse(const ApComplex& w) const {
  return (eta_inf_ * w + 1) / (w - conj(eta_inf_));
}

ApReal MobiusContext::theta_bound() const {
  const ApReal m = abs(eta_inf_);
  if (m.is_zero()) return 1 / separation_;
  const ApReal near = (norm(eta_inf_) * 2 + 1) / separation_;
  const ApReal far = (m + 1 / (m * 2)) * 2;
  return max(near, far);
}

NodeSequence to_bounded(const MobiusContext& ctx, const NodeSequence& nodes) {
  std::vector<ApComplex> out;
  out.reserve(nodes.size());
  for (const auto& eta : nodes) out.push_back(ctx.theta(eta));
  return NodeSequence(std::move(out));
}

ApComplex line_factor_check(const MobiusContext& ctx, const ApComplex& eta_j, const Point2& zeta) {
  const Point2 image = ctx.unitary_adjoint() * zeta;
  const ApComplex lhs = image.z1 - eta_j * image.z2;
  const ApReal scale = sqrt(norm(ctx.eta_inf()) + 1);
  const ApComplex rhs = (ctx.eta_inf() - eta_j) / scale * (zeta.z1 - ctx.theta(eta_j) * zeta.z2);
  return lhs - rhs;
}

TaylorSeries2 pushforward(const TaylorSeries2& f, const MobiusContext& ctx) {
  // (f o U^*)(zeta) with z = U^* zeta: z_1 = u11 zeta_1 + u12 zeta_2, z_2 = u21 zeta_1 + u22 zeta_2
  const Mat2 u = ctx.unitary_adjoint();
  const std::size_t order = f.max_order();
  const int bits = std::max(f.precision(), ctx.eta_inf().precision());

  // powers of the two linear forms as coefficient vectors over zeta_1^i zeta_2^{d-i}
  auto linear_powers = [&](const ApComplex& c1, const ApComplex& c2) {
    std::vector<std::vector<ApComplex>> out{{ApComplex(1, 0, bits)}};
    for (std::size_t d = 1; d <= order; ++d) {
      const auto& prev = out.back();
      std::vector<ApComplex> next(d + 1, ApComplex(bits));
      for (std::size_t i = 0; i < prev.size(); ++i) {
        next[i + 1] += prev[i] * c1;  // times zeta_1
        next[i] += prev[i] * c2;      // times zeta_2
      }
      out.push_back(std::move(next));
    }
    return out;
  };
  const auto first = linear_powers(u[0][0], u[0][1]);
  const auto second = linear_powers(u[1][0], u[1][1]);

  TaylorSeries2 g(order, bits);
  std::vector<std::vector<ApComplex>> acc(order + 1);
  for (std::size_t m = 0; m <= order; ++m) acc[m].assign(m + 1, ApComplex(bits));
  for (std::size_t m = 0; m <= order; ++m) {
    for (std::size_t k = 0; k <= m; ++k) {
      const auto& a = f.coeff(k, m - k);
      if (a.is_zero()) continue;
      const auto& pk = first[k];
      const auto& pl = second[m - k];
      for (std::size_t i = 0; i < pk.size(); ++i) {
        const ApComplex left = a * pk[i];
        for (std::size_t j = 0; j < pl.size(); ++j) acc[m][i + j] += left * pl[j];
      }
    }
  }
  for (std::size_t m = 0; m <= order; ++m) {
    for (std::size_t i = 0; i <= m; ++i) g.set_coeff(i, m - i, acc[m][i]);
  }
  return g;
}

ApComplex reduction_coherence(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                              const MobiusContext& ctx, const Point2& z) {
  const TaylorSeries2 g = pushforward(f, ctx);
  const NodeSequence thetas = to_bounded(ctx, nodes);
  const Point2 uz = ctx.unitary() * z;
  const ApComplex lhs = eval_RN_lagrange(f, nodes, n, z) - eval_tail(f, n, z);
  const ApComplex rhs = eval_RN_lagrange(g, thetas, n, uz) - eval_tail(g, n, uz);
  return lhs - rhs;
}

ApComplex suggest_eta_inf(const NodeSequence& nodes, std::size_t steps) {
  const int bits = nodes.precision();
  ApReal lo_x = nodes[0].real(), hi_x = nodes[0].real();
  ApReal lo_y = nodes[0].imag(), hi_y = nodes[0].imag();
  for (const auto& z : nodes) {
    lo_x = min(lo_x, z.real());
    hi_x = max(hi_x, z.real());
    lo_y = min(lo_y, z.imag());
    hi_y = max(hi_y, z.imag());
  }
  lo_x -= ApReal(1, bits);
  lo_y -= ApReal(1, bits);
  hi_x += ApReal(1, bits);
  hi_y += ApReal(1, bits);
  const long last = static_cast<long>(std::max<std::size_t>(steps, 2) - 1);

  ApComplex best(bits);
  ApReal best_radius(-1, bits);
  for (long i = 0; i <= last; ++i) {
    for (long j = 0; j <= last; ++j) {
      const ApComplex c(lo_x + (hi_x - lo_x) * i / last, lo_y + (hi_y - lo_y) * j / last);
      ApReal radius = abs(nodes[0] - c);
      for (const auto& z : nodes) radius = min(radius, abs(z - c));
      if (radius > best_radius) {
        best_radius = radius;
        best = c;
      }
    }
  }
  return best;
}

}  // namespace holo
