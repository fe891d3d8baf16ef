#include "holo/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "holo/error.hpp"
#include "holo/random.hpp"

namespace holo {

namespace {

ApReal nth_root(const ApReal& x, std::size_t n) {
  if (x.is_zero()) return x;
  return exp(log(x) / static_cast<long>(n));
}

std::vector<ApComplex> binomial_row(std::size_t q, int bits) {
  std::vector<ApComplex> row{ApComplex(1, 0, bits)};
  for (std::size_t u = 1; u <= q; ++u) {
    row.push_back(row.back() * static_cast<long>(q - u + 1) / static_cast<long>(u));
  }
  return row;
}

}  // namespace

ScalarFunction conj_kernel(unsigned q, unsigned s) {
  if (s > q) {
    throw Error(ErrorCode::domain, "conj_kernel needs s <= q (got s=" + std::to_string(s) +
                                       ", q=" + std::to_string(q) + ")");
  }
  ScalarFunction k;
  k.kind = ScalarFunction::Kind::conjugate_kernel;
  k.name = "conj(z)^" + std::to_string(s) + "/(1+|z|^2)^" + std::to_string(q);
  k.eval = [q, s](const ApComplex& zeta) {
    return pow(conj(zeta), s) / pow(norm(zeta) + 1, static_cast<long>(q));
  };
  return k;
}

ScalarFunction projection_kernel(unsigned q, const Point2& z) {
  ScalarFunction k;
  k.kind = ScalarFunction::Kind::composite;
  k.name = "w(z)^" + std::to_string(q);
  k.eval = [q, z](const ApComplex& zeta) {
    return pow((z.z2 + conj(zeta) * z.z1) / (norm(zeta) + 1), q);
  };
  return k;
}

CriterionProfile criterion_profile(const NodeSequence& nodes, std::size_t max_p,
                                   std::size_t max_q) {
  if (nodes.size() < max_p + 1) {
    throw Error(ErrorCode::arity, "criterion profile with P = " + std::to_string(max_p) +
                                      " needs " + std::to_string(max_p + 1) + " nodes, got " +
                                      std::to_string(nodes.size()));
  }
  const auto prefix = nodes.prefix(max_p + 1);
  const int bits = prefix.precision();
  CriterionProfile out;
  out.max_p = max_p;
  out.max_q = max_q;
  out.raw.assign(max_p + 1, std::vector<ApReal>(max_q + 1, ApReal::zero(bits)));
  out.normalized = out.raw;
  out.r_hat = ApReal::zero(bits);
  for (std::size_t q = 0; q <= max_q; ++q) {
    const auto table = delta_table(conj_kernel(static_cast<unsigned>(q), static_cast<unsigned>(q)),
                                   prefix);
    for (std::size_t p = 0; p <= max_p; ++p) {
      out.raw[p][q] = abs(table.at(p, 0));
      if (p + q == 0) {
        out.normalized[p][q] = out.raw[p][q];
        continue;
      }
      out.normalized[p][q] = nth_root(out.raw[p][q], p + q);
      out.r_hat = max(out.r_hat, out.normalized[p][q]);
    }
  }
  return out;
}

MixedProfile mixed_profile(const NodeSequence& nodes, std::size_t max_p, std::size_t max_q) {
  if (nodes.size() < max_p + 1) {
    throw Error(ErrorCode::arity, "mixed profile with P = " + std::to_string(max_p) + " needs " +
                                      std::to_string(max_p + 1) + " nodes");
  }
  const auto prefix = nodes.prefix(max_p + 1);
  MixedProfile out;
  out.max_p = max_p;
  out.max_q = max_q;
  out.entries.resize(max_p + 1);
  out.values.resize(max_p + 1);
  for (std::size_t p = 0; p <= max_p; ++p) {
    out.entries[p].resize(max_q + 1);
    out.values[p].resize(max_q + 1);
  }
  for (std::size_t q = 0; q <= max_q; ++q) {
    for (std::size_t s = 0; s <= q; ++s) {
      const auto table =
          delta_table(conj_kernel(static_cast<unsigned>(q), static_cast<unsigned>(s)), prefix);
      for (std::size_t p = 0; p <= max_p; ++p) {
        out.values[p][q].push_back(table.at(p, 0));
        out.entries[p][q].push_back(abs(table.at(p, 0)));
      }
    }
  }
  return out;
}

ApReal strengthened_constant(const ApReal& r_hat, const ApReal& max_modulus) {
  const ApReal three(3, std::max(r_hat.precision(), max_modulus.precision()));
  const ApReal base = max(max(three, max_modulus * 3), r_hat);
  return base * base;
}

ApReal strengthened_bound_ratio(const MixedProfile& profile, const ApReal& bound) {
  ApReal worst = ApReal::zero(bound.precision());
  for (std::size_t p = 0; p <= profile.max_p; ++p) {
    for (std::size_t q = 0; q <= profile.max_q; ++q) {
      const ApReal scale = pow(bound, static_cast<long>(p + q));
      for (const auto& entry : profile.entries[p][q]) worst = max(worst, entry / scale);
    }
  }
  return worst;
}

ApComplex binomial_kernel_delta(const MixedProfile& profile, std::size_t p, std::size_t q,
                                const Point2& z) {
  if (p > profile.max_p || q > profile.max_q) {
    throw Error(ErrorCode::arity, "binomial_kernel_delta outside the profile window");
  }
  const int bits = std::max(profile.values[p][q].front().precision(), z.precision());
  const auto binom = binomial_row(q, bits);
  ApComplex sum(bits);
  for (std::size_t u = 0; u <= q; ++u) {
    sum += binom[u] * pow(z.z2, static_cast<long>(q - u)) * pow(z.z1, static_cast<long>(u)) *
           profile.values[p][q][u];
  }
  return sum;
}

// ------------------------------------------------------------ families

namespace {

ApReal golden_fraction(int bits) { return (sqrt(ApReal(5, bits)) - 1) / 2; }

}  // namespace

NodeSequence generate_nodes(const NodeFamily& family, std::size_t count, std::uint64_t seed,
                            int precision_bits) {
  require_precision(precision_bits);
  if (count == 0) throw Error(ErrorCode::configuration, "node count must be at least 1");
  std::vector<ApComplex> nodes;
  nodes.reserve(count);
  const auto offset = static_cast<long>(seed);

  if (const auto* list = std::get_if<ExplicitList>(&family)) {
    if (list->nodes.size() < count) {
      throw Error(ErrorCode::configuration, "explicit node list has only " +
                                                std::to_string(list->nodes.size()) + " entries");
    }
    for (std::size_t k = 0; k < count; ++k) nodes.push_back(list->nodes[k].with_precision(precision_bits));
  } else if (const auto* line = std::get_if<LineFamily>(&family)) {
    const ApReal a = line->a.with_precision(precision_bits);
    const ApReal b = line->b.with_precision(precision_bits);
    const ApReal c = line->c.with_precision(precision_bits);
    const ApReal n2 = a * a + b * b;
    if (n2.is_zero()) throw Error(ErrorCode::configuration, "line family needs (a, b) != (0, 0)");
    const ApComplex base = ApComplex(a, b) * (-c / n2);
    const ApComplex direction = ApComplex(b, -a) / sqrt(n2);
    const ApReal phi = golden_fraction(precision_bits);
    for (std::size_t k = 0; k < count; ++k) {
      const ApReal t = frac(phi * (static_cast<long>(k) + offset + 1)) * 2 - 1;
      nodes.push_back(base + direction * t);
    }
  } else if (const auto* circle = std::get_if<CircleFamily>(&family)) {
    if (!(circle->radius > 0)) throw Error(ErrorCode::configuration, "circle radius must be positive");
    const ApReal phi = golden_fraction(precision_bits);
    const ApReal two_pi = ApReal::pi(precision_bits) * 2;
    const ApReal r = circle->radius.with_precision(precision_bits);
    const ApComplex z0 = circle->center.with_precision(precision_bits);
    for (std::size_t k = 0; k < count; ++k) {
      const ApReal turn = frac(phi * (static_cast<long>(k) + offset));
      nodes.push_back(z0 + ApComplex::polar(r, two_pi * turn));
    }
  } else {
    const auto& custom = std::get<CustomFamily>(family);
    for (std::size_t k = 0; k < count; ++k) {
      nodes.push_back(custom.generator(k + static_cast<std::size_t>(seed), precision_bits));
    }
  }
  return NodeSequence(std::move(nodes));
}

ScalarFunction germ_for_family(const NodeFamily& family) {
  ScalarFunction g;
  g.kind = ScalarFunction::Kind::analytic_series;
  if (const auto* line = std::get_if<LineFamily>(&family)) {
    const ApReal a = line->a;
    const ApReal b = line->b;
    const ApReal c = line->c;
    if ((a * a + b * b).is_zero()) {
      throw Error(ErrorCode::configuration, "line family needs (a, b) != (0, 0)");
    }
    g.name = "line germ";
    // conj(z) = -(((a - ib)/2) z + c) / ((a + ib)/2)
    g.eval = [a, b, c](const ApComplex& z) {
      const ApComplex alpha = ApComplex(a, -b) / 2;
      const ApComplex beta = ApComplex(a, b) / 2;
      return -(alpha * z + ApComplex(c)) / beta;
    };
  } else if (const auto* circle = std::get_if<CircleFamily>(&family)) {
    const ApComplex z0 = circle->center;
    const ApReal r2 = circle->radius * circle->radius;
    g.name = "circle germ";
    // conj(z) = conj(z0) + r^2 / (z - z0)
    g.eval = [z0, r2](const ApComplex& z) { return conj(z0) + ApComplex(r2) / (z - z0); };
  } else {
    throw Error(ErrorCode::no_germ, "only line and circle families carry a conjugation germ");
  }
  g.d_zbar = [](const ApComplex& z) { return ApComplex(z.precision()); };
  return g;
}

// ------------------------------------------------------ uniform probe

UniformDeltaProbe uniform_delta_probe(const NodeSequence& nodes, std::size_t p_max,
                                      std::size_t trials, std::uint64_t seed,
                                      const ScalarFunction& kernel) {
  if (nodes.size() < p_max + 1) {
    throw Error(ErrorCode::arity, "uniform probe with p_max = " + std::to_string(p_max) +
                                      " needs " + std::to_string(p_max + 1) + " nodes");
  }
  UniformDeltaProbe out;
  out.seed = seed;
  out.trials = trials;
  Rng rng(seed);
  const std::size_t total = nodes.size();
  std::vector<std::size_t> pool(total);

  for (std::size_t p = 0; p <= p_max; ++p) {
    ApReal best = abs(delta(kernel, nodes, p));
    for (std::size_t t = 0; t < trials; ++t) {
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (std::size_t i = 0; i <= p; ++i) {
        const auto j = static_cast<std::size_t>(
            rng.integer(static_cast<long>(i), static_cast<long>(total) - 1));
        std::swap(pool[i], pool[j]);
      }
      std::vector<std::size_t> pick(pool.begin(), pool.begin() + static_cast<long>(p + 1));
      std::sort(pick.begin(), pick.end());
      best = max(best, abs(delta(kernel, nodes.permuted(pick), p)));
    }
    out.max_by_order.push_back(std::move(best));
  }

  // least squares of log(max) against p, p >= 1
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t p = 1; p <= p_max; ++p) {
    if (out.max_by_order[p].is_zero()) continue;
    xs.push_back(static_cast<double>(p));
    ys.push_back(out.max_by_order[p].log2_abs() * std::log(2.0));
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.growth_ratio = std::exp(sxy / sxx);
  }
  return out;
}

}  // namespace holo
