#include "holo/counterexample.hpp"

#include <cmath>

#include "holo/error.hpp"

namespace holo {

namespace {

// f[prefix..., zeta] in Lagrange form; the prefix weights are precomputed.
class PrefixDelta {
 public:
  PrefixDelta(const ScalarFunction& f, std::span<const ApComplex> prefix, int bits) : f_(f) {
    for (const auto& eta : prefix) nodes_.push_back(eta.with_precision(bits));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      ApComplex w(1, 0, bits);
      for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (j != i) w *= nodes_[i] - nodes_[j];
      }
      scaled_.push_back(f_(nodes_[i]) / w);
    }
  }

  ApComplex operator()(const ApComplex& zeta) const {
    ApComplex acc(zeta.precision());
    ApComplex prod(1, 0, zeta.precision());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      acc += scaled_[i] / (nodes_[i] - zeta);
      prod *= zeta - nodes_[i];
    }
    return acc + f_(zeta) / prod;
  }

 private:
  const ScalarFunction& f_;
  std::vector<ApComplex> nodes_;
  std::vector<ApComplex> scaled_;
};

ApReal stage_target(std::size_t p, int bits) {
  return pow(ApReal(static_cast<long>(p + 1), bits), static_cast<long>(p + 1));
}

// Largest power of two strictly below x (x > 0).
ApReal power_of_two_below(const ApReal& x) {
  const long e = static_cast<long>(std::floor(x.log2_abs()));
  ApReal t = ApReal::pow2(e, x.precision());
  while (t >= x) t = ldexp(t, -1);
  while (ldexp(t, 1) < x) t = ldexp(t, 1);
  return t;
}

// Rounded to a 64-bit significand so the node is exact at any working precision.
ApReal round_node(const ApReal& x, int bits) { return x.with_precision(kMinPrecision).with_precision(bits); }

ApComplex prefix_d_zbar(const ScalarFunction& f, std::span<const ApComplex> prefix, int bits) {
  ApComplex den(1, 0, bits);
  for (const auto& eta : prefix) den *= -eta;
  return f.d_zbar(ApComplex(bits)) / den;
}

enum class StageFailure { none, cancellation, unstable, stalled };

struct StageAttempt {
  StageFailure failure = StageFailure::none;
  StageRecord record;
  std::string detail;
};

StageAttempt try_stage(const ScalarFunction& f, const std::vector<ApComplex>& previous,
                       std::size_t p, int bits, const PrecisionPolicy& policy) {
  StageAttempt out;
  const ApReal target = stage_target(p, bits);

  // (a) eta_{3p+1} on the real axis
  ApReal bound = 1 / ApReal(static_cast<long>(3 * p + 1), bits);
  for (const auto& eta : previous) bound = min(bound, abs(eta));
  ApReal t = power_of_two_below(bound);
  std::vector<ApComplex> prefix(previous);
  for (auto& eta : prefix) eta = eta.with_precision(bits);
  prefix.emplace_back(ApComplex(bits));
  ApComplex d_zbar(bits);
  for (;;) {
    prefix.back() = ApComplex(t, ApReal::zero(bits));
    d_zbar = prefix_d_zbar(f, prefix, bits);
    if (abs(d_zbar) >= target + 1) break;
    t = ldexp(t, -1);
  }
  if (cancellation_estimate(prefix) > bits / 2.0) {
    out.failure = StageFailure::cancellation;
    return out;
  }

  // (b) phase of d_z / d_zbar
  const WirtingerPair wp = wirtinger_at_zero(f, prefix, bits);
  ApComplex phase(1, 0, bits);
  if (!wp.d_z.is_zero()) {
    phase = wp.d_z / wp.d_zbar;
    phase = phase / abs(phase);
  }
  const ApReal band = ApReal::pow2(-bits / 4, bits);
  PairCase pair_case = PairCase::mixed;
  if (abs(phase - 1) < band) {
    pair_case = PairCase::real_pair;
  } else if (abs(phase + 1) < band) {
    pair_case = PairCase::imaginary_pair;
  }
  const ApReal half_theta = arg(phase) / 2;
  const ApReal c = cos(half_theta);
  const ApReal s = sin(half_theta);

  // (c), (d) pair on the axes, shrinking until the bound is met
  ApReal r = ldexp(t, -1);
  const std::size_t order = 3 * p + 2;
  for (std::size_t step = 0; step < policy.shrink_budget; ++step, r = ldexp(r, -1)) {
    ApComplex a(bits), b(bits);
    switch (pair_case) {
      case PairCase::real_pair:
        a = ApComplex(r, ApReal::zero(bits));
        b = -a;
        break;
      case PairCase::imaginary_pair:
        a = ApComplex(ApReal::zero(bits), r);
        b = -a;
        break;
      case PairCase::mixed:
        a = ApComplex(round_node(r * c, bits), ApReal::zero(bits));
        b = ApComplex(ApReal::zero(bits), round_node(r * s, bits));
        break;
    }
    std::vector<ApComplex> nodes(prefix);
    nodes.push_back(a);
    nodes.push_back(b);
    if (cancellation_estimate(nodes) > bits / 2.0) {
      out.failure = StageFailure::cancellation;
      return out;
    }
    const ApReal achieved = abs(delta(f, NodeSequence(nodes), order));
    if (achieved < target) continue;

    // accept only if a 64-bit wider evaluation agrees
    const NodeSequence wide = NodeSequence(nodes).with_precision(bits + 64);
    const ApReal check = abs(delta(f, wide, order));
    if (check < target || abs(check - achieved) > ldexp(check, -32)) {
      out.failure = StageFailure::unstable;
      out.detail = "value at " + std::to_string(bits) + " bits disagrees with the wider check";
      return out;
    }
    StageRecord& rec = out.record;
    rec.p = p;
    rec.nodes[0] = prefix.back();
    rec.nodes[1] = a;
    rec.nodes[2] = b;
    rec.pair_case = pair_case;
    rec.d_zbar_magnitude = abs(d_zbar);
    rec.achieved = achieved;
    rec.target = target;
    rec.precision_bits = bits;
    return out;
  }
  out.failure = StageFailure::stalled;
  return out;
}

Axis axis_of(const ApComplex& z) { return z.real().is_zero() && !z.imag().is_zero() ? Axis::imaginary : Axis::real; }

}  // namespace

ScalarFunction default_kernel() {
  ScalarFunction k;
  k.kind = ScalarFunction::Kind::conjugate_kernel;
  k.name = "conj(z)/(1+|z|^2)";
  k.eval = [](const ApComplex& z) { return conj(z) / (norm(z) + 1); };
  k.d_zbar = [](const ApComplex& z) {
    const ApReal d = norm(z) + 1;
    return ApComplex(1 / (d * d));
  };
  return k;
}

WirtingerPair wirtinger_at_zero(const ScalarFunction& f, std::span<const ApComplex> prefix,
                                int precision_bits) {
  require_precision(precision_bits);
  if (!f.d_zbar) {
    throw Error(ErrorCode::unsuitable_kernel,
                "kernel '" + f.name + "' has no closed-form anti-holomorphic derivative");
  }
  ApReal rho(1, precision_bits);
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i].is_zero()) {
      throw Error(ErrorCode::degenerate_node,
                  "node " + std::to_string(i + 1) + " is 0, where the derivative is taken");
    }
    if (i == 0 || abs(prefix[i]) < rho) rho = abs(prefix[i]);
  }
  const int bits = precision_bits;
  WirtingerPair out{ApComplex(bits), prefix_d_zbar(f, prefix, bits)};

  const PrefixDelta g(f, prefix, bits);
  const long e = static_cast<long>(std::floor(rho.log2_abs())) - bits / 3;
  auto central = [&](const ApReal& h) {
    const ApComplex x(h, ApReal::zero(bits));
    const ApComplex y(ApReal::zero(bits), h);
    const ApComplex dx = (g(x) - g(-x)) / (2 * h);
    const ApComplex dy = (g(y) - g(-y)) / (2 * h);
    return (dx - ApComplex::i(bits) * dy) / 2;
  };
  const ApReal h = ApReal::pow2(e, bits);
  const ApComplex coarse = central(h);
  const ApComplex fine = central(ldexp(h, -1));
  out.d_z = (fine * 4 - coarse) / 3;
  return out;
}

const char* to_string(Axis axis) { return axis == Axis::real ? "real" : "imaginary"; }

const char* to_string(PairCase c) {
  switch (c) {
    case PairCase::real_pair:
      return "real_pair";
    case PairCase::imaginary_pair:
      return "imaginary_pair";
    case PairCase::mixed:
      return "mixed";
  }
  return "mixed";
}

int AdversarialSequence::precision_bits() const {
  int bits = 0;
  for (const auto& rec : stage_log) bits = std::max(bits, rec.precision_bits);
  return bits;
}

double cancellation_estimate(std::span<const ApComplex> nodes) {
  double total = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      total += std::fabs(abs(nodes[i] - nodes[j]).log2_abs());
    }
  }
  return total;
}

AdversarialSequence build_sequence(const ScalarFunction& f, std::size_t stages,
                                   const PrecisionPolicy& policy) {
  if (stages == 0) throw Error(ErrorCode::configuration, "stages must be at least 1");
  require_precision(policy.initial_bits);
  if (!f.d_zbar || f.d_zbar(ApComplex(policy.initial_bits)).is_zero()) {
    throw Error(ErrorCode::unsuitable_kernel,
                "kernel '" + f.name + "' has vanishing anti-holomorphic derivative at 0");
  }

  AdversarialSequence seq;
  int bits = policy.initial_bits;
  for (std::size_t p = 0; p < stages; ++p) {
    for (;;) {
      const StageAttempt attempt = try_stage(f, seq.nodes, p, bits, policy);
      if (attempt.failure == StageFailure::none) {
        for (const auto& z : attempt.record.nodes) {
          seq.nodes.push_back(z);
          seq.axes.push_back(axis_of(z));
        }
        seq.stage_log.push_back(attempt.record);
        break;
      }
      if (!policy.escalate || bits * 2 > policy.max_bits) {
        std::string why = attempt.failure == StageFailure::cancellation ? "cancellation exceeds precision"
                          : attempt.failure == StageFailure::unstable   ? attempt.detail
                                                                        : "shrink budget exhausted";
        throw Error(ErrorCode::construction_failure,
                    "stage " + std::to_string(p) + " failed at " + std::to_string(bits) +
                        " bits (" + why + ") after " + std::to_string(seq.stages()) +
                        " completed stages");
      }
      bits *= 2;
    }
  }
  return seq;
}

bool GrowthReport::passed() const {
  if (rows.empty() || !violations.empty()) return false;
  for (const auto& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

GrowthReport verify_growth(const AdversarialSequence& seq, const ScalarFunction& f) {
  GrowthReport report;
  const auto& nodes = seq.nodes;

  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const ApComplex& z = nodes[j];
    const std::string label = "node " + std::to_string(j + 1);
    if (!(z.real() * z.imag()).is_zero()) report.violations.push_back(label + " lies off both axes");
    if (j < seq.axes.size()) {
      const bool on_tag = seq.axes[j] == Axis::real ? z.imag().is_zero() : z.real().is_zero();
      if (!on_tag) report.violations.push_back(label + " is not on its tagged axis");
    }
  }
  for (std::size_t p = 0; 3 * p < nodes.size(); ++p) {
    const std::size_t lead = 3 * p;
    const ApReal m = abs(nodes[lead]);
    const std::string label = "stage " + std::to_string(p);
    if (!(m * (3 * static_cast<long>(p) + 1) < 1)) report.violations.push_back(label + ": leading node too large");
    for (std::size_t i = 0; i < lead; ++i) {
      if (!(m < abs(nodes[i]))) {
        report.violations.push_back(label + ": leading node not below earlier moduli");
        break;
      }
    }
    for (std::size_t k = lead + 1; k < std::min(lead + 3, nodes.size()); ++k) {
      const ApReal mk = abs(nodes[k]);
      if (mk.is_zero() || !(mk < m)) report.violations.push_back(label + ": pair node not below leading node");
    }
  }

  for (const auto& rec : seq.stage_log) {
    GrowthCheck row;
    row.p = rec.p + 1;
    row.precision_bits = rec.precision_bits + 64;
    row.target = stage_target(rec.p, row.precision_bits);
    const std::size_t needed = 3 * rec.p + 3;
    if (nodes.size() < needed) {
      row.note = "arity: " + std::to_string(nodes.size()) + " nodes, stage needs " + std::to_string(needed);
      report.rows.push_back(std::move(row));
      continue;
    }
    try {
      std::vector<ApComplex> prefix(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(needed));
      const NodeSequence fresh = NodeSequence(std::move(prefix)).with_precision(row.precision_bits);
      row.achieved = abs(delta(f, fresh, needed - 1));
      row.pass = *row.achieved >= row.target;
    } catch (const Error& e) {
      row.note = std::string(to_string(e.code())) + ": " + e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace holo
