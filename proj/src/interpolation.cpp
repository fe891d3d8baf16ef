#include "holo/interpolation.hpp"

#include <algorithm>
#include <numeric>

#include "holo/error.hpp"
#include "holo/random.hpp"

namespace holo {

namespace {

void require_order(std::size_t n, std::size_t available) {
  if (n == 0) throw Error(ErrorCode::arity, "interpolation order N must be at least 1");
  if (n > available) {
    throw Error(ErrorCode::arity, "N = " + std::to_string(n) + " exceeds the " +
                                      std::to_string(available) + " available nodes");
  }
}

ApComplex line_factor(const ApComplex& eta, const Point2& z) { return z.z1 - eta * z.z2; }

ApComplex w_of(const ApComplex& eta, const Point2& z) {
  return (z.z2 + conj(eta) * z.z1) / (norm(eta) + 1);
}

/// sum_{m=N}^{M} w^{m-N+1} c_m for one line.
ApComplex remainder_on_line(const std::vector<ApComplex>& c, std::size_t n, const ApComplex& w) {
  ApComplex acc(w.precision());
  for (std::size_t m = c.size(); m-- > n;) acc = (acc + c[m]) * w;
  return acc;
}

}  // namespace

// ----------------------------------------------------------- LineSamples

LineSamples::LineSamples(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t count)
    : nodes_(nodes.prefix(count)) {
  lines_.reserve(count);
  for (const auto& eta : nodes_) lines_.push_back(restrict_to_line(f, eta));
}

LineSamples::LineSamples(NodeSequence nodes, std::vector<LineRestriction> lines)
    : nodes_(std::move(nodes)), lines_(std::move(lines)) {
  if (lines_.size() != nodes_.size()) {
    throw Error(ErrorCode::arity, "line samples need one restriction per node");
  }
  for (std::size_t q = 0; q < lines_.size(); ++q) {
    if (!(lines_[q].slope == nodes_[q])) {
      throw Error(ErrorCode::configuration, "restriction slope does not match its node");
    }
  }
}

// --------------------------------------------------- ExplicitInterpolant

ExplicitInterpolant::ExplicitInterpolant(LineSamples samples, std::size_t n)
    : samples_(std::move(samples)), n_(n) {
  require_order(n, samples_.size());
  const auto& eta = samples_.nodes();
  weight_.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    weight_[p].reserve(n - p);
    for (std::size_t q = p; q < n; ++q) {
      ApComplex denom = (norm(eta[q]) + 1) * ApComplex(1, 0, eta.precision());
      for (std::size_t j = p; j < n; ++j) {
        if (j != q) denom *= eta[q] - eta[j];
      }
      weight_[p].push_back((eta[p] * conj(eta[q]) + 1) / denom);
    }
  }
}

ApComplex ExplicitInterpolant::operator()(const Point2& z) const {
  const auto& eta = samples_.nodes();
  const int bits = std::max(eta.precision(), z.precision());
  const std::size_t n = n_;

  // tail[q][s] = sum_{m >= s} w_q^{m-s} c_m(eta_q), needed for s = N-p-1..
  std::vector<std::vector<ApComplex>> tail(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto& c = samples_.line(q).coeffs;
    const ApComplex w = w_of(eta[q], z);
    tail[q].assign(c.size() + 1, ApComplex(bits));
    for (std::size_t s = c.size(); s-- > 0;) tail[q][s] = c[s] + w * tail[q][s + 1];
  }

  ApComplex sum(bits);
  ApComplex outer(1, 0, bits);  // prod_{j > p} (z_1 - eta_j z_2)
  for (std::size_t p = n; p-- > 0;) {
    // one-based p' = p + 1, so the series starts at m = N - p'
    const std::size_t start = n - (p + 1);
    ApComplex inner(bits);
    for (std::size_t q = p; q < n; ++q) {
      if (start < tail[q].size()) inner += weight_[p][q - p] * tail[q][start];
    }
    sum += outer * inner;
    outer *= line_factor(eta[p], z);
  }
  return sum;
}

// ------------------------------------------------------------ free forms

ApComplex lagrange_monomial(const NodeSequence& nodes, std::size_t n, std::size_t q,
                            const Point2& z) {
  require_order(n, nodes.size());
  if (q >= n) throw Error(ErrorCode::arity, "lagrange_monomial: q must be below N");
  ApComplex value(1, 0, std::max(nodes.precision(), z.precision()));
  for (std::size_t j = 0; j < n; ++j) {
    if (j != q) value *= line_factor(nodes[j], z) / (nodes[q] - nodes[j]);
  }
  return value;
}

ApComplex eval_EN(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                  const Point2& z) {
  require_order(n, nodes.size());
  return ExplicitInterpolant(LineSamples(f, nodes, n), n)(z);
}

ApComplex eval_RN_lagrange(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                           const Point2& z) {
  require_order(n, nodes.size());
  ApComplex sum(std::max({f.precision(), nodes.precision(), z.precision()}));
  if (n > f.max_order()) return sum;
  for (std::size_t p = 0; p < n; ++p) {
    const auto line = restrict_to_line(f, nodes[p]);
    const ApComplex r = remainder_on_line(line.coeffs, n, w_of(nodes[p], z));
    if (r.is_zero()) continue;
    sum += lagrange_monomial(nodes, n, p, z) * r;
  }
  return sum;
}

ScalarFunction remainder_kernel(const TaylorSeries2& f, std::size_t n, const Point2& z) {
  ScalarFunction kernel;
  kernel.kind = ScalarFunction::Kind::composite;
  kernel.name = "r_N";
  kernel.eval = [&f, n, z](const ApComplex& zeta) {
    const auto line = restrict_to_line(f, zeta);
    return remainder_on_line(line.coeffs, n, w_of(zeta, z));
  };
  return kernel;
}

ApComplex eval_RN_newton(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                         const Point2& z) {
  require_order(n, nodes.size());
  const int bits = std::max({f.precision(), nodes.precision(), z.precision()});
  ApComplex sum(bits);
  if (n > f.max_order()) return sum;
  const auto table = delta_table(remainder_kernel(f, n, z), nodes.prefix(n));
  ApComplex basis(1, 0, bits);  // prod_{j < p} (z_1 - eta_j z_2)
  for (std::size_t p = 0; p < n; ++p) {
    sum += pow(z.z2, static_cast<long>(n - 1 - p)) * basis * table.at(p, 0);
    basis *= line_factor(nodes[p], z);
  }
  return sum;
}

ApComplex eval_tail(const TaylorSeries2& f, std::size_t n, const Point2& z) {
  ApComplex sum(std::max(f.precision(), z.precision()));
  for (std::size_t m = n; m <= f.max_order(); ++m) {
    for (std::size_t k = 0; k <= m; ++k) {
      const auto& a = f.coeff(k, m - k);
      if (!a.is_zero()) {
        sum += a * pow(z.z1, static_cast<long>(k)) * pow(z.z2, static_cast<long>(m - k));
      }
    }
  }
  return sum;
}

ApReal condition_estimate(const NodeSequence& nodes, std::size_t n) {
  require_order(n, nodes.size());
  ApReal worst(1, nodes.precision());
  for (std::size_t q = 0; q < n; ++q) {
    ApReal product(1, nodes.precision());
    for (std::size_t j = 0; j < n; ++j) {
      if (j != q) product /= abs(nodes[q] - nodes[j]);
    }
    worst = max(worst, product);
  }
  return worst;
}

InterpolantReport identity_report(const TaylorSeries2& f, const NodeSequence& nodes,
                                  std::size_t n, const Point2& z) {
  InterpolantReport report;
  report.n = n;
  report.node_count = nodes.size();
  report.value_EN = eval_EN(f, nodes, n, z);
  report.value_RN_lagrange = eval_RN_lagrange(f, nodes, n, z);
  report.value_RN_newton = eval_RN_newton(f, nodes, n, z);
  report.value_tail = eval_tail(f, n, z);
  report.value_f = eval2(f, z);
  report.identity_residual =
      report.value_EN - report.value_RN_lagrange + report.value_tail - report.value_f;
  report.condition = condition_estimate(nodes, n);
  return report;
}

ApComplex interpolation_check(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                              std::size_t p, const ApComplex& v) {
  require_order(n, nodes.size());
  if (p >= n) throw Error(ErrorCode::arity, "interpolation_check: line index must be below N");
  const Point2 z{nodes[p] * v, v};
  return eval_EN(f, nodes, n, z) - eval2(f, z);
}

ApReal order_sensitivity(const TaylorSeries2& f, const NodeSequence& nodes, std::size_t n,
                         const Point2& z, std::size_t trials, std::uint64_t seed) {
  require_order(n, nodes.size());
  const ApComplex base = eval_EN(f, nodes, n, z);
  Rng rng(seed);
  ApReal worst = ApReal::zero(base.precision());
  std::vector<std::size_t> perm(n);
  for (std::size_t t = 0; t < trials; ++t) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.integer(0, static_cast<long>(i) - 1))]);
    }
    worst = max(worst, abs(eval_EN(f, nodes.prefix(n).permuted(perm), n, z) - base));
  }
  return worst;
}

// ---------------------------------------------------------------- sweeps

std::vector<Point2> make_grid(const GridSpec& spec, std::uint64_t seed, int precision_bits) {
  if (!(spec.radius > 0.0) || spec.per_axis == 0) {
    throw Error(ErrorCode::configuration, "grid needs a positive radius and at least one point per axis");
  }
  const ApReal radius = ApReal::from_double(spec.radius, precision_bits);
  const ApReal two_pi = ApReal::pi(precision_bits) * 2;
  std::vector<ApComplex> ring;
  for (std::size_t k = 0; k < spec.per_axis; ++k) {
    ring.push_back(ApComplex::polar(radius, two_pi * static_cast<long>(k) /
                                                static_cast<long>(spec.per_axis)));
  }
  std::vector<Point2> grid;
  for (const auto& a : ring) {
    for (const auto& b : ring) grid.push_back({a, b});
  }
  Rng rng(seed);
  auto draw = [&] {
    const ApReal r = radius * sqrt(ApReal::from_double(rng.uniform(), precision_bits));
    return ApComplex::polar(r, two_pi * ApReal::from_double(rng.uniform(), precision_bits));
  };
  for (std::size_t i = 0; i < spec.random_points; ++i) {
    ApComplex z1 = draw();
    ApComplex z2 = draw();
    grid.push_back({std::move(z1), std::move(z2)});
  }
  return grid;
}

std::vector<ConvergenceRow> convergence_table(const TaylorSeries2& f, const NodeSequence& nodes,
                                              std::size_t n_min, std::size_t n_max,
                                              const std::vector<Point2>& grid) {
  require_order(n_max, nodes.size());
  if (n_min == 0 || n_min > n_max) {
    throw Error(ErrorCode::configuration, "convergence range must satisfy 1 <= n_min <= n_max");
  }
  std::vector<ApComplex> exact;
  exact.reserve(grid.size());
  for (const auto& z : grid) exact.push_back(eval2(f, z));

  const LineSamples samples(f, nodes, n_max);
  std::vector<ConvergenceRow> rows;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const ExplicitInterpolant en(samples, n);
    ApReal sup = ApReal::zero(std::max(f.precision(), nodes.precision()));
    for (std::size_t i = 0; i < grid.size(); ++i) sup = max(sup, abs(exact[i] - en(grid[i])));
    ConvergenceRow row{n, sup, std::nullopt};
    if (!rows.empty() && !rows.back().sup_error.is_zero()) row.ratio = sup / rows.back().sup_error;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace holo
