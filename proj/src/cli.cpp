#include "holo/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "holo/io.hpp"
#include "holo/random.hpp"

namespace holo::cli {

namespace {

using io::json;

struct RunConfig {
  int precision = kDefaultPrecision;
  std::size_t max_order = 40;
  std::string nodes;
  std::string function;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::string grid = "0.5,5,10";
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string tol;

  // subcommand extras
  std::size_t stages = 5;
  int max_precision = 1 << 16;
  std::string growth_out;
  std::size_t max_p = 15;
  std::size_t max_q = 15;
  std::string eta_inf;
  std::string phi;
  bool max_order_given = false;
  bool sweep = false;
};

GridSpec parse_grid(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, c;
  std::getline(ss, a, ',');
  std::getline(ss, b, ',');
  std::getline(ss, c, ',');
  GridSpec g;
  try {
    g.radius = std::stod(a);
    if (!b.empty()) g.per_axis = std::stoul(b);
    if (!c.empty()) g.random_points = std::stoul(c);
  } catch (const std::exception&) {
    throw Error(ErrorCode::configuration, "grid must be 'radius[,per_axis[,random_points]]'");
  }
  return g;
}

ApReal tolerance(const RunConfig& cfg) {
  if (!cfg.tol.empty()) return ApReal::parse(cfg.tol, cfg.precision);
  return ApReal::pow2(-cfg.precision / 2, cfg.precision);
}

void check_range(const RunConfig& cfg) {
  if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) {
    throw Error(ErrorCode::configuration, "need 1 <= n-min <= n-max");
  }
}

// Payload goes to --out when given, else to `out`.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out) : out_(out) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out, std::ios::binary);
      if (!file_) throw Error(ErrorCode::io, "cannot write '" + cfg.out + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

bool want_json(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw Error(ErrorCode::configuration, "format must be csv or json");
  return f == "json";
}

// ------------------------------------------------------------ commands

int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_range(cfg);
  const NodeSequence nodes = io::load_nodes(cfg.nodes, cfg.precision, cfg.seed);
  if (nodes.size() < cfg.n_max) {
    throw Error(ErrorCode::arity, "n-max " + std::to_string(cfg.n_max) + " exceeds the " +
                                      std::to_string(nodes.size()) + " available nodes");
  }
  const std::string fsrc = cfg.function.empty() ? "builtin:exp_sum" : cfg.function;
  const TaylorSeries2 f = io::load_series(fsrc, cfg.max_order, cfg.precision, cfg.seed);
  const auto grid = make_grid(parse_grid(cfg.grid), cfg.seed, cfg.precision);
  if (auto warn = conditioning_warning(nodes.prefix(cfg.n_max))) err << "warning: " << *warn << '\n';
  const auto rows = convergence_table(f, nodes, cfg.n_min, cfg.n_max, grid);

  Sink sink(cfg, out);
  if (want_json(cfg, "csv")) {
    sink.stream() << io::convergence_to_json(rows).dump(2) << '\n';
  } else {
    io::write_convergence_csv(sink.stream(), rows);
  }
  return Exit::ok;
}

int cmd_criterion(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const NodeSequence nodes = io::load_nodes(cfg.nodes, cfg.precision, cfg.seed);
  const CriterionProfile profile = criterion_profile(nodes, cfg.max_p, cfg.max_q);
  err << "observed max normalized value (p+q >= 1): " << profile.r_hat.to_string(12) << '\n';
  Sink sink(cfg, out);
  if (want_json(cfg, "csv")) {
    sink.stream() << io::profile_to_json(profile).dump(2) << '\n';
  } else {
    io::write_profile_csv(sink.stream(), profile);
  }
  return Exit::ok;
}

int cmd_counterexample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string ksrc = cfg.function.empty() ? "default" : cfg.function;
  const ScalarFunction f = io::load_kernel(ksrc, cfg.precision);
  PrecisionPolicy policy;
  policy.initial_bits = cfg.precision;
  policy.max_bits = std::max(cfg.max_precision, cfg.precision);
  const AdversarialSequence seq = build_sequence(f, cfg.stages, policy);
  const GrowthReport report = verify_growth(seq, f);
  for (const auto& v : report.violations) err << "invariant violation: " << v << '\n';

  Sink sink(cfg, out);
  if (want_json(cfg, "json")) {
    json doc = io::sequence_to_json(seq, f.name);
    doc["growth"] = io::growth_to_json(report);
    sink.stream() << doc.dump(2) << '\n';
  } else {
    io::write_growth_csv(sink.stream(), report);
  }
  if (!cfg.growth_out.empty()) {
    std::ofstream csv(cfg.growth_out, std::ios::binary);
    if (!csv) throw Error(ErrorCode::io, "cannot write '" + cfg.growth_out + "'");
    io::write_growth_csv(csv, report);
  }
  return report.passed() ? Exit::ok : Exit::check_failed;
}

int cmd_identity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_range(cfg);
  const NodeSequence nodes = io::load_nodes(cfg.nodes, cfg.precision, cfg.seed);
  if (nodes.size() < cfg.n_max) {
    throw Error(ErrorCode::arity, "n-max " + std::to_string(cfg.n_max) + " exceeds the " +
                                      std::to_string(nodes.size()) + " available nodes");
  }
  const std::string fsrc = cfg.function.empty() ? "builtin:randpoly:6" : cfg.function;
  const TaylorSeries2 f = io::load_series(fsrc, cfg.max_order, cfg.precision, cfg.seed);
  // an explicit --max-order truncates the series used for R_N and the tail only
  const TaylorSeries2 g = cfg.max_order_given ? f.truncated(cfg.max_order) : f;
  const auto grid = make_grid(parse_grid(cfg.grid), cfg.seed, cfg.precision);
  const ApReal tol = tolerance(cfg);

  Sink sink(cfg, out);
  const bool as_json = want_json(cfg, "csv");
  if (cfg.sweep && as_json) throw Error(ErrorCode::configuration, "--sweep writes CSV only");
  json rows = json::array();
  if (cfg.sweep) {
    io::write_sweep_header(sink.stream());
  } else if (!as_json) {
    sink.stream() << "N,max_residual,max_newton_gap,condition\n";
  }
  ApReal worst = ApReal::zero(cfg.precision);
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    ApReal residual = ApReal::zero(cfg.precision);
    ApReal newton_gap = ApReal::zero(cfg.precision);
    for (const auto& z : grid) {
      const ApComplex fz = eval2(f, z);
      const ApComplex en = eval_EN(f, nodes, n, z);
      const ApComplex rl = eval_RN_lagrange(g, nodes, n, z);
      const ApComplex rn = eval_RN_newton(g, nodes, n, z);
      const ApComplex tail = eval_tail(g, n, z);
      ApReal scale(1, cfg.precision);
      for (const auto* v : {&fz, &en, &rl, &tail}) scale = max(scale, abs(*v));
      const ApReal point_residual = abs(en - rl + tail - fz) / scale;
      residual = max(residual, point_residual);
      newton_gap = max(newton_gap, abs(rl - rn) / scale);
      if (cfg.sweep) io::write_sweep_row(sink.stream(), n, z, point_residual, abs(fz - en));
    }
    const ApReal cond = condition_estimate(nodes, n);
    worst = max(worst, max(residual, newton_gap));
    if (cfg.sweep) {
      // per-point rows already written
    } else if (as_json) {
      rows.push_back({{"N", n}, {"max_residual", residual.to_string(20)},
                      {"max_newton_gap", newton_gap.to_string(20)}, {"condition", cond.to_string(20)}});
    } else {
      sink.stream() << n << ',' << residual.to_string(20) << ',' << newton_gap.to_string(20) << ','
                    << cond.to_string(20) << '\n';
    }
  }
  const bool pass = worst <= tol;
  if (as_json) {
    sink.stream() << json{{"tolerance", tol.to_string(6)}, {"passed", pass}, {"rows", rows}}.dump(2) << '\n';
  }
  err << "max scaled residual " << worst.to_string(6) << (pass ? " <= " : " > ") << "tolerance "
      << tol.to_string(6) << '\n';
  return pass ? Exit::ok : Exit::check_failed;
}

int cmd_mobius(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (want_json(cfg, "json") == false) {
    throw Error(ErrorCode::configuration, "mobius writes JSON only");
  }
  const int bits = cfg.precision;
  const NodeSequence nodes = io::load_nodes(cfg.nodes, bits, cfg.seed);
  const ApReal tol = tolerance(cfg);
  Sink sink(cfg, out);

  if (cfg.eta_inf == "inf") {
    // rotated identification for a bounded node set with eta_inf at infinity
    const ApReal phi = cfg.phi.empty() ? ApReal::zero(bits) : ApReal::parse(cfg.phi, bits);
    const ApComplex rot = -ApComplex::polar(ApReal(1, bits), phi * -2);
    json thetas = json::array();
    ApReal sup = ApReal::zero(bits);
    for (const auto& eta : nodes) {
      const ApComplex t = rot * eta;
      sup = max(sup, abs(t));
      thetas.push_back(io::to_json(t));
    }
    sink.stream() << json{{"eta_inf", "inf"}, {"phi", phi.to_string()}, {"theta", thetas},
                          {"max_theta", sup.to_string()}}.dump(2)
                  << '\n';
    return Exit::ok;
  }

  const ApComplex eta_inf =
      cfg.eta_inf.empty() ? suggest_eta_inf(nodes) : io::parse_complex(cfg.eta_inf, bits);
  const MobiusContext ctx(nodes, eta_inf);
  const NodeSequence thetas = to_bounded(ctx, nodes);

  ApReal max_theta = ApReal::zero(bits);
  ApReal round_trip = ApReal::zero(bits);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    max_theta = max(max_theta, abs(thetas[j]));
    round_trip = max(round_trip, abs(ctx.theta_inverse(thetas[j]) - nodes[j]));
  }
  const ApReal bound = ctx.theta_bound();

  Rng rng(cfg.seed);
  auto draw = [&] {
    return ApComplex(ApReal::from_double(rng.uniform(-1, 1), bits), ApReal::from_double(rng.uniform(-1, 1), bits));
  };
  ApReal line_factor = ApReal::zero(bits);
  for (const auto& eta : nodes) {
    const Point2 zeta{draw(), draw()};
    line_factor = max(line_factor, abs(line_factor_check(ctx, eta, zeta)));
  }

  const std::size_t n = std::min<std::size_t>(cfg.n_max == 0 ? 4 : cfg.n_max, nodes.size());
  const std::string fsrc = cfg.function.empty() ? "builtin:randpoly:6" : cfg.function;
  const TaylorSeries2 f = io::load_series(fsrc, cfg.max_order, bits, cfg.seed);
  ApReal coherence = ApReal::zero(bits);
  for (const auto& z : make_grid(parse_grid(cfg.grid), cfg.seed, bits)) {
    coherence = max(coherence, abs(reduction_coherence(f, nodes, n, ctx, z)));
  }

  const ApReal unitary = unitarity_residual(ctx.unitary());
  const bool pass = max_theta <= bound && unitary <= tol && line_factor <= tol && round_trip <= tol &&
                    coherence <= tol;
  json doc = io::context_to_json(ctx, nodes);
  doc["theta_bound"] = bound.to_string();
  doc["max_theta"] = max_theta.to_string();
  doc["unitarity_residual"] = unitary.to_string(6);
  doc["line_factor_residual"] = line_factor.to_string(6);
  doc["round_trip_residual"] = round_trip.to_string(6);
  doc["coherence"] = {{"N", n}, {"residual", coherence.to_string(6)}};
  doc["tolerance"] = tol.to_string(6);
  doc["passed"] = pass;
  sink.stream() << doc.dump(2) << '\n';
  if (!pass) err << "mobius checks exceeded tolerance\n";
  return pass ? Exit::ok : Exit::check_failed;
}

int cmd_dd(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const NodeSequence nodes = io::load_nodes(cfg.nodes, cfg.precision, cfg.seed);
  const ScalarFunction h = io::load_kernel(cfg.function.empty() ? "default" : cfg.function, cfg.precision);
  const DividedDiffTable table = delta_table(h, nodes);
  Sink sink(cfg, out);
  if (want_json(cfg, "csv")) {
    sink.stream() << io::table_to_json(table).dump(2) << '\n';
  } else {
    io::write_table_csv(sink.stream(), table);
  }
  return Exit::ok;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::configuration:
    case ErrorCode::malformed_number:
    case ErrorCode::separation:
    case ErrorCode::io:
    case ErrorCode::arity:
    case ErrorCode::no_germ:
      return Exit::bad_config;
    case ErrorCode::node_distinctness:
    case ErrorCode::domain:
    case ErrorCode::degenerate_node:
    case ErrorCode::unsuitable_kernel:
    case ErrorCode::construction_failure:
      return Exit::numeric_failure;
  }
  return Exit::numeric_failure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reconstruction of holomorphic functions from line restrictions"};
  app.name("holo");
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision, "working precision in bits (>= 64)");
    sub->add_option("--nodes", cfg.nodes, "node file or family:<kind>:<params>:<count>");
    sub->add_option("--function", cfg.function, "function file, builtin:<spec> or kernel name");
    sub->add_option("--max-order", cfg.max_order, "Taylor truncation order");
    sub->add_option("--seed", cfg.seed, "seed for grids and random data");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
  };
  auto ranged = [&](CLI::App* sub) {
    sub->add_option("--n-min", cfg.n_min, "smallest N");
    sub->add_option("--n-max", cfg.n_max, "largest N");
    sub->add_option("--grid", cfg.grid, "radius,per_axis,random_points");
  };

  auto* converge = app.add_subcommand("converge", "sup-grid error of E_N against N");
  common(converge);
  ranged(converge);

  auto* criterion = app.add_subcommand("criterion", "divided-difference profile of the node set");
  common(criterion);
  criterion->add_option("--max-p", cfg.max_p, "largest order p");
  criterion->add_option("--max-q", cfg.max_q, "largest kernel power q");

  auto* counter = app.add_subcommand("counterexample", "build and verify the adversarial sequence");
  common(counter);
  counter->add_option("--stages", cfg.stages, "number of three-node stages");
  counter->add_option("--max-precision", cfg.max_precision, "escalation ceiling in bits");
  counter->add_option("--growth-out", cfg.growth_out, "also write the growth table as CSV");

  auto* identity = app.add_subcommand("identity", "check f = E_N - R_N + tail over a grid");
  common(identity);
  ranged(identity);
  identity->add_option("--tol", cfg.tol, "pass threshold for the scaled residual");
  identity->add_flag("--sweep", cfg.sweep, "write one CSV row per grid point instead of per N");

  auto* mobius = app.add_subcommand("mobius", "reduce a non-dense node set to a bounded one");
  common(mobius);
  ranged(mobius);
  mobius->add_option("--eta-inf", cfg.eta_inf, "re,im of the excluded point (default: suggested)");
  mobius->add_option("--phi", cfg.phi)->group("");
  mobius->add_option("--tol", cfg.tol, "pass threshold for residuals");

  auto* dd = app.add_subcommand("dd", "raw divided-difference table of a kernel");
  common(dd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::bad_config;
  }

  auto range_defaults = [&](std::size_t lo, std::size_t hi) {
    if (cfg.n_min == 0) cfg.n_min = lo;
    if (cfg.n_max == 0) cfg.n_max = hi;
  };
  try {
    require_precision(cfg.precision);
    auto* sub = app.get_subcommands().front();
    if (sub != counter && cfg.nodes.empty()) {
      throw Error(ErrorCode::configuration, "--nodes is required");
    }
    if (sub == converge) {
      range_defaults(2, 16);
      return cmd_converge(cfg, out, err);
    }
    if (sub == criterion) return cmd_criterion(cfg, out, err);
    if (sub == counter) return cmd_counterexample(cfg, out, err);
    if (sub == identity) {
      range_defaults(1, 8);
      cfg.max_order_given = identity->count("--max-order") > 0;
      return cmd_identity(cfg, out, err);
    }
    if (sub == mobius) return cmd_mobius(cfg, out, err);
    return cmd_dd(cfg, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error [configuration]: " << e.what() << '\n';
    return Exit::bad_config;
  }
}

}  // namespace holo::cli
