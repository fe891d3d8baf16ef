#include "holo/divided_diff.hpp"

#include <algorithm>

#include "holo/error.hpp"
#include "holo/random.hpp"

namespace holo {

namespace {

void require_nodes(const NodeSequence& prefix, std::size_t needed, const char* what) {
  if (prefix.size() < needed) {
    throw Error(ErrorCode::arity, std::string(what) + " needs " + std::to_string(needed) +
                                      " nodes, got " + std::to_string(prefix.size()));
  }
}

std::vector<ApComplex> sample(const ScalarFunction& h, const NodeSequence& nodes) {
  std::vector<ApComplex> values;
  values.reserve(nodes.size());
  for (const auto& eta : nodes) values.push_back(h(eta));
  return values;
}

}  // namespace

// ---------------------------------------------------------- NodeSequence

NodeSequence::NodeSequence(std::vector<ApComplex> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::arity, "node sequence is empty");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes_[i] == nodes_[j]) {
        throw Error(ErrorCode::node_distinctness,
                    "nodes " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                        " coincide");
      }
    }
  }
}

int NodeSequence::precision() const {
  int bits = 0;
  for (const auto& z : nodes_) bits = std::max(bits, z.precision());
  return bits;
}

NodeSequence NodeSequence::prefix(std::size_t count) const {
  if (count == 0 || count > nodes_.size()) {
    throw Error(ErrorCode::arity, "prefix of " + std::to_string(count) + " nodes requested from " +
                                      std::to_string(nodes_.size()));
  }
  return {std::vector<ApComplex>(nodes_.begin(), nodes_.begin() + static_cast<long>(count)),
          Trusted{}};
}

NodeSequence NodeSequence::permuted(std::span<const std::size_t> perm) const {
  std::vector<ApComplex> out;
  out.reserve(perm.size());
  for (auto index : perm) out.push_back(nodes_.at(index));
  return NodeSequence(std::move(out));
}

NodeSequence NodeSequence::with_precision(int precision_bits) const {
  std::vector<ApComplex> out;
  out.reserve(nodes_.size());
  for (const auto& z : nodes_) out.push_back(z.with_precision(precision_bits));
  // rounding down can merge nodes, so re-validate
  return NodeSequence(std::move(out));
}

std::optional<ApReal> NodeSequence::min_gap() const {
  std::optional<ApReal> best;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      ApReal gap = abs(nodes_[i] - nodes_[j]);
      if (!best || gap < *best) best = std::move(gap);
    }
  }
  return best;
}

ApReal NodeSequence::max_modulus() const {
  ApReal best = ApReal::zero(precision());
  for (const auto& z : nodes_) best = max(best, abs(z));
  return best;
}

NodeSequence random_disc_nodes(std::size_t count, double radius, std::uint64_t seed,
                               int precision_bits) {
  Rng rng(seed);
  std::vector<ApComplex> nodes;
  nodes.reserve(count);
  while (nodes.size() < count) {
    const double x = rng.uniform(-1, 1);
    const double y = rng.uniform(-1, 1);
    if (x * x + y * y >= 1) continue;
    nodes.emplace_back(ApReal::from_double(x * radius, precision_bits),
                       ApReal::from_double(y * radius, precision_bits));
  }
  return NodeSequence(std::move(nodes));
}

std::optional<std::string> conditioning_warning(const NodeSequence& nodes) {
  const auto gap = nodes.min_gap();
  if (!gap) return std::nullopt;
  const int bits = nodes.precision();
  if (*gap < ApReal::pow2(-(bits / 2), bits)) {
    return "near-duplicate nodes: minimum gap " + gap->to_string(6) + " is below 2^-" +
           std::to_string(bits / 2) + "; expect loss of precision";
  }
  return std::nullopt;
}

// -------------------------------------------------------- ScalarFunction

namespace functions {

ScalarFunction constant(const ApComplex& c) {
  return {ScalarFunction::Kind::analytic_series, "constant",
          [c](const ApComplex&) { return c; },
          [c](const ApComplex&) { return ApComplex(c.precision()); }};
}

ScalarFunction identity() {
  return {ScalarFunction::Kind::analytic_series, "z", [](const ApComplex& z) { return z; },
          [](const ApComplex& z) { return ApComplex(z.precision()); }};
}

ScalarFunction conjugate() {
  return {ScalarFunction::Kind::conjugate_kernel, "conj(z)",
          [](const ApComplex& z) { return conj(z); },
          [](const ApComplex& z) { return ApComplex(1, 0, z.precision()); }};
}

ScalarFunction polynomial(std::vector<ApComplex> coeffs, ApComplex center) {
  return {ScalarFunction::Kind::analytic_series, "polynomial",
          [coeffs = std::move(coeffs), center = std::move(center)](const ApComplex& z) {
            const ApComplex w = z - center;
            ApComplex acc(w.precision());
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
            return acc;
          },
          [](const ApComplex& z) { return ApComplex(z.precision()); }};
}

ScalarFunction product(ScalarFunction g, ScalarFunction h) {
  ScalarFunction out;
  out.kind = ScalarFunction::Kind::composite;
  out.name = "(" + g.name + ")*(" + h.name + ")";
  if (g.d_zbar && h.d_zbar) {
    out.d_zbar = [g, h](const ApComplex& z) { return g.d_zbar(z) * h(z) + g(z) * h.d_zbar(z); };
  }
  out.eval = [g = std::move(g), h = std::move(h)](const ApComplex& z) { return g(z) * h(z); };
  return out;
}

}  // namespace functions

// ------------------------------------------------------ DividedDiffTable

DividedDiffTable::DividedDiffTable(NodeSequence nodes, std::vector<ApComplex> values)
    : nodes_(std::move(nodes)) {
  if (values.size() != nodes_.size()) {
    throw Error(ErrorCode::arity, "table needs one value per node");
  }
  rows_ = divided_difference_rows<ApComplex>(nodes_.values(), values);
}

DividedDiffTable delta_table(const ScalarFunction& h, const NodeSequence& prefix) {
  return DividedDiffTable(prefix, sample(h, prefix));
}

ApComplex delta(const ScalarFunction& h, const NodeSequence& prefix, std::size_t p) {
  require_nodes(prefix, p + 1, "delta");
  return delta_table(h, prefix.prefix(p + 1)).at(p, 0);
}

ApComplex newton_sum(const ScalarFunction& h, const NodeSequence& prefix, std::size_t n,
                     const ApComplex& x) {
  require_nodes(prefix, std::max<std::size_t>(n, 1), "newton_sum");
  const auto table = delta_table(h, prefix.prefix(std::max<std::size_t>(n, 1)));
  ApComplex sum(std::max(x.precision(), prefix.precision()));
  ApComplex basis(1, 0, sum.precision());
  for (std::size_t p = 0; p < n; ++p) {
    sum += basis * table.at(p, 0);
    basis *= x - prefix[p];
  }
  return sum;
}

ApComplex lagrange_sum(const ScalarFunction& h, const NodeSequence& prefix, std::size_t n,
                       const ApComplex& x) {
  require_nodes(prefix, std::max<std::size_t>(n, 1), "lagrange_sum");
  ApComplex sum(std::max(x.precision(), prefix.precision()));
  for (std::size_t p = 0; p < n; ++p) {
    ApComplex weight(1, 0, sum.precision());
    for (std::size_t j = 0; j < n; ++j) {
      if (j == p) continue;
      weight *= (x - prefix[j]) / (prefix[p] - prefix[j]);
    }
    sum += weight * h(prefix[p]);
  }
  return sum;
}

ApComplex leibniz_delta(const ScalarFunction& g, const ScalarFunction& h,
                        const NodeSequence& prefix, std::size_t p) {
  require_nodes(prefix, p + 1, "leibniz_delta");
  const auto nodes = prefix.prefix(p + 1);
  const auto tg = delta_table(g, nodes);
  const auto th = delta_table(h, nodes);
  ApComplex sum(nodes.precision());
  for (std::size_t q = 0; q <= p; ++q) {
    // g over (eta_{q+1}, ..., eta_{p+1}) is the window starting at k = q
    sum += tg.at(p - q, q) * th.at(q, 0);
  }
  return sum;
}

ApComplex delta_analytic(std::span<const ApComplex> series_coeffs, const ApComplex& center,
                         const NodeSequence& prefix, std::size_t p) {
  if (series_coeffs.empty()) throw Error(ErrorCode::arity, "delta_analytic: empty series");
  require_nodes(prefix, p + 1, "delta_analytic");
  const int bits = std::max(prefix.precision(), center.precision());
  if (series_coeffs.size() <= p) return ApComplex(bits);

  const std::size_t max_level = series_coeffs.size() - 1 - p;
  std::vector<ApComplex> shifted;
  for (std::size_t j = 0; j <= p; ++j) shifted.push_back(prefix[j] - center);

  // nested[L] after processing variable j holds
  //   sum_{l_j=0}^{L} x_j^{L-l_j} * (inner sum at level l_j),
  // starting from the innermost factor x_{p+1}^L.
  std::vector<ApComplex> nested;
  nested.reserve(max_level + 1);
  for (std::size_t level = 0; level <= max_level; ++level) {
    nested.push_back(pow(shifted[p], static_cast<long>(level)));
  }
  for (std::size_t j = p; j-- > 0;) {
    std::vector<ApComplex> outer;
    outer.reserve(max_level + 1);
    for (std::size_t level = 0; level <= max_level; ++level) {
      ApComplex acc(bits);
      for (std::size_t l = 0; l <= level; ++l) {
        acc += pow(shifted[j], static_cast<long>(level - l)) * nested[l];
      }
      outer.push_back(std::move(acc));
    }
    nested = std::move(outer);
  }

  ApComplex sum(bits);
  for (std::size_t n = p; n < series_coeffs.size(); ++n) sum += series_coeffs[n] * nested[n - p];
  return sum;
}

std::uint64_t monotone_tuple_count(unsigned n, unsigned p) {
  // C(n+p, p) by the multiplicative formula; each partial product is itself a
  // binomial coefficient, so the division is exact.
  const unsigned k = std::min(n, p);
  unsigned __int128 result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result = result * (n + p - k + i) / i;
    if (result > UINT64_MAX) {
      throw Error(ErrorCode::domain, "monotone_tuple_count overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace holo
