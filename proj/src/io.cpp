#include "holo/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "holo/error.hpp"

namespace holo::io {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(std::move(current));
  return out;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw Error(ErrorCode::configuration, "bad " + what + " '" + text + "'");
  }
  return value;
}

ApReal real_from_json(const json& j, int bits) {
  if (j.is_string()) return ApReal::parse(j.get<std::string>(), bits);
  if (j.is_number_integer()) return ApReal(j.get<long>(), bits);
  throw Error(ErrorCode::malformed_number,
              "expected a decimal string, got " + j.dump() + " (binary floats are not accepted)");
}

int file_precision(const json& j, int requested) {
  if (j.contains("precision_bits")) {
    const int bits = j.at("precision_bits").get<int>();
    require_precision(bits);
    return std::max(bits, requested);
  }
  return requested;
}

json real_to_json(const ApReal& x) { return x.to_string(); }

}  // namespace

// ---------------------------------------------------------------- basics

json to_json(const ApComplex& z) { return json{{"re", z.real().to_string()}, {"im", z.imag().to_string()}}; }

ApComplex complex_from_json(const json& j, int precision_bits) {
  if (!j.is_object() || !j.contains("re")) {
    throw Error(ErrorCode::configuration, "complex value must be an object with \"re\" and \"im\"");
  }
  ApReal re = real_from_json(j.at("re"), precision_bits);
  ApReal im = j.contains("im") ? real_from_json(j.at("im"), precision_bits) : ApReal::zero(precision_bits);
  return {std::move(re), std::move(im)};
}

ApComplex parse_complex(std::string_view text, int precision_bits) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return ApComplex(ApReal::parse(parts[0], precision_bits), ApReal::zero(precision_bits));
  if (parts.size() == 2) return make_complex(parts[0], parts[1], precision_bits);
  throw Error(ErrorCode::malformed_number, "expected 're,im', got '" + std::string(text) + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::configuration, origin + ": invalid JSON (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------- nodes

NodeSequence nodes_from_json(const json& j, int precision_bits) {
  if (!j.is_object() || !j.contains("nodes") || !j.at("nodes").is_array()) {
    throw Error(ErrorCode::configuration, "node file needs a \"nodes\" array");
  }
  const int bits = file_precision(j, precision_bits);
  const auto& list = j.at("nodes");
  if (list.empty()) throw Error(ErrorCode::configuration, "node file has no nodes");
  std::vector<ApComplex> nodes;
  nodes.reserve(list.size());
  for (const auto& item : list) nodes.push_back(complex_from_json(item, bits));
  return NodeSequence(std::move(nodes));
}

json nodes_to_json(const NodeSequence& nodes) {
  json list = json::array();
  for (const auto& z : nodes) list.push_back(to_json(z));
  return json{{"precision_bits", nodes.precision()}, {"nodes", std::move(list)}};
}

NodeFamily parse_family(std::string_view spec, int precision_bits) {
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  auto params = [&](std::size_t expected) {
    if (parts.size() < 2) throw Error(ErrorCode::configuration, "family '" + kind + "' needs parameters");
    auto values = split(parts[1], ',');
    if (values.size() != expected) {
      throw Error(ErrorCode::configuration,
                  "family '" + kind + "' takes " + std::to_string(expected) + " parameters");
    }
    std::vector<ApReal> out;
    for (const auto& v : values) out.push_back(ApReal::parse(v, precision_bits));
    return out;
  };
  if (kind == "line") {
    auto v = params(3);
    return LineFamily{v[0], v[1], v[2]};
  }
  if (kind == "circle") {
    auto v = params(3);
    return CircleFamily{ApComplex(v[0], v[1]), v[2]};
  }
  if (kind == "golden") return CircleFamily{ApComplex(precision_bits), ApReal(1, precision_bits)};
  throw Error(ErrorCode::no_germ, "family '" + kind + "' has no conjugation germ");
}

NodeSequence load_nodes(std::string_view source, int precision_bits, std::uint64_t seed) {
  constexpr std::string_view prefix = "family:";
  if (source.substr(0, prefix.size()) != prefix) {
    const std::string path(source);
    return nodes_from_json(parse_json(read_file(path), path), precision_bits);
  }
  const std::string spec(source.substr(prefix.size()));
  const auto parts = split(spec, ':');
  if (parts.size() < 2) throw Error(ErrorCode::configuration, "family spec '" + spec + "' lacks a count");
  const std::size_t count = parse_count(parts.back(), "node count");
  if (count == 0) throw Error(ErrorCode::configuration, "node count must be at least 1");
  const std::string& kind = parts[0];

  if (kind == "integers") {
    std::vector<ApComplex> nodes;
    for (std::size_t j = 1; j <= count; ++j) nodes.emplace_back(static_cast<long>(j), 0, precision_bits);
    return NodeSequence(std::move(nodes));
  }
  if (kind == "random") {
    if (parts.size() != 3) throw Error(ErrorCode::configuration, "use family:random:<radius>:<count>");
    const double radius = ApReal::parse(parts[1], 64).to_double();
    if (!(radius > 0)) throw Error(ErrorCode::configuration, "random family radius must be positive");
    return random_disc_nodes(count, radius, seed, precision_bits);
  }
  if (kind == "line" || kind == "circle" || kind == "golden") {
    const std::size_t expected = kind == "golden" ? 2 : 3;
    if (parts.size() != expected) {
      throw Error(ErrorCode::configuration, "malformed family spec '" + spec + "'");
    }
    const std::string family_spec = spec.substr(0, spec.rfind(':'));
    return generate_nodes(parse_family(family_spec, precision_bits), count, 0, precision_bits);
  }
  throw Error(ErrorCode::configuration, "unknown node family '" + kind + "'");
}

// ------------------------------------------------------------- functions

TaylorSeries2 series_from_json(const json& j, int precision_bits) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array()) {
    throw Error(ErrorCode::configuration, "function file needs a \"coeffs\" array");
  }
  const int bits = file_precision(j, precision_bits);
  std::size_t order = 0;
  for (const auto& c : j.at("coeffs")) {
    order = std::max(order, c.at("k").get<std::size_t>() + c.at("l").get<std::size_t>());
  }
  if (j.contains("max_order")) order = std::max(order, j.at("max_order").get<std::size_t>());
  TaylorSeries2 f(order, bits);
  for (const auto& c : j.at("coeffs")) {
    const auto k = c.at("k").get<std::size_t>();
    const auto l = c.at("l").get<std::size_t>();
    f.set_coeff(k, l, f.coeff(k, l) + complex_from_json(c, bits));
  }
  return f;
}

json series_to_json(const TaylorSeries2& f) {
  json coeffs = json::array();
  for (std::size_t m = 0; m <= f.max_order(); ++m) {
    for (std::size_t k = 0; k <= m; ++k) {
      const auto& a = f.coeff(k, m - k);
      if (a.is_zero()) continue;
      json c = to_json(a);
      c["k"] = k;
      c["l"] = m - k;
      coeffs.push_back(std::move(c));
    }
  }
  return json{{"precision_bits", f.precision()}, {"max_order", f.max_order()}, {"coeffs", std::move(coeffs)}};
}

TaylorSeries2 load_series(std::string_view source, std::size_t max_order, int precision_bits,
                          std::uint64_t seed) {
  constexpr std::string_view prefix = "builtin:";
  if (source.substr(0, prefix.size()) != prefix) {
    const std::string path(source);
    return series_from_json(parse_json(read_file(path), path), precision_bits);
  }
  const std::string spec(source.substr(prefix.size()));
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto order = [&] { return arg.empty() ? max_order : parse_count(arg, "order"); };

  if (kind == "exp_sum") return series::exp_sum(order(), precision_bits);
  if (kind == "expcos") return series::exp_cos(order(), precision_bits);
  if (kind == "poly") return series::parse_inline(arg, precision_bits);
  if (kind == "randpoly") {
    return series::random_polynomial(parse_count(arg, "degree"), seed, precision_bits);
  }
  throw Error(ErrorCode::configuration, "unknown builtin function '" + kind + "'");
}

ScalarFunction load_kernel(std::string_view spec, int precision_bits) {
  const std::string text(spec);
  if (text == "default") return default_kernel();
  if (text == "conj") return functions::conjugate();
  if (text == "z") return functions::identity();
  if (text.rfind("const:", 0) == 0) return functions::constant(parse_complex(text.substr(6), precision_bits));
  if (text.rfind("gq:", 0) == 0) {
    const auto q = static_cast<unsigned>(parse_count(text.substr(3), "kernel power"));
    return conj_kernel(q, q);
  }
  throw Error(ErrorCode::configuration, "unknown kernel '" + text + "'");
}

// ------------------------------------------------------------- reports

void write_table_csv(std::ostream& os, const DividedDiffTable& table) {
  os << "p,k,re,im\n";
  for (std::size_t p = 0; p < table.orders(); ++p) {
    const auto& row = table.row(p);
    for (std::size_t k = 0; k < row.size(); ++k) {
      os << p << ',' << k << ',' << row[k].real().to_string() << ',' << row[k].imag().to_string() << '\n';
    }
  }
}

json table_to_json(const DividedDiffTable& table) {
  json rows = json::array();
  for (std::size_t p = 0; p < table.orders(); ++p) {
    json row = json::array();
    for (const auto& v : table.row(p)) row.push_back(to_json(v));
    rows.push_back(std::move(row));
  }
  return json{{"nodes", nodes_to_json(table.nodes())["nodes"]}, {"rows", std::move(rows)}};
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "N,sup_error,ratio\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.sup_error.to_string() << ',' << (r.ratio ? r.ratio->to_string() : "") << '\n';
  }
}

json convergence_to_json(const std::vector<ConvergenceRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row{{"N", r.n}, {"sup_error", real_to_json(r.sup_error)}};
    row["ratio"] = r.ratio ? json(r.ratio->to_string()) : json(nullptr);
    out.push_back(std::move(row));
  }
  return out;
}

void write_profile_csv(std::ostream& os, const CriterionProfile& profile) {
  os << "p,q,raw,normalized\n";
  for (std::size_t p = 0; p <= profile.max_p; ++p) {
    for (std::size_t q = 0; q <= profile.max_q; ++q) {
      os << p << ',' << q << ',' << profile.raw[p][q].to_string() << ','
         << profile.normalized[p][q].to_string() << '\n';
    }
  }
}

json profile_to_json(const CriterionProfile& profile) {
  json rows = json::array();
  for (std::size_t p = 0; p <= profile.max_p; ++p) {
    for (std::size_t q = 0; q <= profile.max_q; ++q) {
      rows.push_back({{"p", p}, {"q", q}, {"raw", real_to_json(profile.raw[p][q])},
                      {"normalized", real_to_json(profile.normalized[p][q])}});
    }
  }
  return json{{"max_p", profile.max_p}, {"max_q", profile.max_q},
              {"r_hat", real_to_json(profile.r_hat)}, {"entries", std::move(rows)}};
}

json report_to_json(const InterpolantReport& r) {
  return json{{"N", r.n},
              {"node_count", r.node_count},
              {"f", to_json(r.value_f)},
              {"E_N", to_json(r.value_EN)},
              {"R_N_lagrange", to_json(r.value_RN_lagrange)},
              {"R_N_newton", to_json(r.value_RN_newton)},
              {"tail", to_json(r.value_tail)},
              {"identity_residual", real_to_json(abs(r.identity_residual))},
              {"condition", real_to_json(r.condition)}};
}

void write_sweep_header(std::ostream& os) {
  os << "N,z1_re,z1_im,z2_re,z2_im,residual,error\n";
}

void write_sweep_row(std::ostream& os, std::size_t n, const Point2& z, const ApReal& residual,
                     const ApReal& error) {
  os << n << ',' << z.z1.real().to_string() << ',' << z.z1.imag().to_string() << ','
     << z.z2.real().to_string() << ',' << z.z2.imag().to_string() << ',' << residual.to_string(20) << ','
     << error.to_string(20) << '\n';
}

json sequence_to_json(const AdversarialSequence& seq, const std::string& kernel_name) {
  json nodes = json::array();
  for (std::size_t j = 0; j < seq.nodes.size(); ++j) {
    json node = to_json(seq.nodes[j]);
    if (j < seq.axes.size()) node["axis"] = to_string(seq.axes[j]);
    nodes.push_back(std::move(node));
  }
  json stages = json::array();
  for (const auto& rec : seq.stage_log) {
    json chosen = json::array();
    for (const auto& z : rec.nodes) chosen.push_back(to_json(z));
    stages.push_back({{"p", rec.p},
                      {"nodes", std::move(chosen)},
                      {"case", to_string(rec.pair_case)},
                      {"d_zbar_magnitude", real_to_json(rec.d_zbar_magnitude)},
                      {"achieved", real_to_json(rec.achieved)},
                      {"target", real_to_json(rec.target)},
                      {"precision_bits", rec.precision_bits}});
  }
  return json{{"kernel", kernel_name},
              {"precision_bits", std::max(seq.precision_bits(), kMinPrecision)},
              {"nodes", std::move(nodes)},
              {"stages", std::move(stages)}};
}

AdversarialSequence sequence_from_json(const json& j) {
  const int bits = file_precision(j, kMinPrecision);
  AdversarialSequence seq;
  for (const auto& node : j.at("nodes")) {
    seq.nodes.push_back(complex_from_json(node, bits));
    const std::string axis = node.value("axis", "real");
    seq.axes.push_back(axis == "imaginary" ? Axis::imaginary : Axis::real);
  }
  if (j.contains("stages")) {
    for (const auto& s : j.at("stages")) {
      StageRecord rec;
      rec.p = s.at("p").get<std::size_t>();
      rec.precision_bits = s.at("precision_bits").get<int>();
      const int sb = std::max(rec.precision_bits, kMinPrecision);
      for (std::size_t i = 0; i < 3; ++i) rec.nodes[i] = complex_from_json(s.at("nodes").at(i), sb);
      const std::string c = s.value("case", "mixed");
      rec.pair_case = c == "real_pair" ? PairCase::real_pair
                      : c == "imaginary_pair" ? PairCase::imaginary_pair
                                              : PairCase::mixed;
      rec.d_zbar_magnitude = real_from_json(s.at("d_zbar_magnitude"), sb);
      rec.achieved = real_from_json(s.at("achieved"), sb);
      rec.target = real_from_json(s.at("target"), sb);
      seq.stage_log.push_back(std::move(rec));
    }
  }
  return seq;
}

void write_growth_csv(std::ostream& os, const GrowthReport& report) {
  os << "p,achieved,target,precision_bits,pass\n";
  for (const auto& r : report.rows) {
    os << r.p << ',' << (r.achieved ? r.achieved->to_string(30) : "") << ',' << r.target.to_string()
       << ',' << r.precision_bits << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

json growth_to_json(const GrowthReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row{{"p", r.p}, {"target", real_to_json(r.target)}, {"precision_bits", r.precision_bits}, {"pass", r.pass}};
    row["achieved"] = r.achieved ? json(r.achieved->to_string(30)) : json(nullptr);
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  return json{{"passed", report.passed()}, {"rows", std::move(rows)}, {"violations", report.violations}};
}

json context_to_json(const MobiusContext& ctx, const NodeSequence& nodes) {
  json unitary = json::array();
  for (const auto& row : ctx.unitary()) {
    unitary.push_back(json::array({to_json(row[0]), to_json(row[1])}));
  }
  json thetas = json::array();
  for (const auto& eta : nodes) thetas.push_back(to_json(ctx.theta(eta)));
  return json{{"eta_inf", to_json(ctx.eta_inf())},
              {"separation", real_to_json(ctx.separation())},
              {"unitary", std::move(unitary)},
              {"theta", std::move(thetas)}};
}

}  // namespace holo::io
