#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "holo/cli.hpp"
#include "holo/io.hpp"
#include "support.hpp"

using namespace holo;
using holo::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "holo_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::string> csv_column(const std::string& csv, std::size_t col) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    for (std::size_t i = 0; i <= col; ++i) std::getline(cells, cell, ',');
    out.push_back(cell);
  }
  return out;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"converge", "--bogus"}).code == 2);
  CHECK(run({"converge"}).code == 2);  // no --nodes
  CHECK(run({"converge", "--nodes", "family:golden:8", "--precision", "32"}).code == 2);
  CHECK(run({"converge", "--nodes", "family:golden:8", "--n-min", "5", "--n-max", "3"}).code == 2);
  CHECK(run({"converge", "--nodes", "family:golden:8", "--n-max", "9"}).code == 2);
  CHECK(run({"converge", "--nodes", "family:golden:8", "--format", "xml"}).code == 2);
  CHECK(run({"converge", "--nodes", "family:hexagon:8"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("node file problems") {
  const auto empty = scratch("empty.json");
  write(empty, R"({"nodes": []})");
  const Result r = run({"converge", "--nodes", empty.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);

  CHECK(run({"criterion", "--nodes", scratch("missing.json").string()}).code == 2);

  const auto floats = scratch("floats.json");
  write(floats, R"({"nodes": [{"re": 0.5, "im": "0"}]})");
  CHECK(run({"dd", "--nodes", floats.string()}).code == 2);

  const auto garbage = scratch("garbage.json");
  write(garbage, "{not json");
  CHECK(run({"dd", "--nodes", garbage.string()}).code == 2);

  const auto dup = scratch("dup.json");
  write(dup, R"({"nodes": [{"re": "1", "im": "0"}, {"re": "0.5", "im": "1"}, {"re": "1", "im": "0"}]})");
  const Result d = run({"identity", "--nodes", dup.string(), "--n-max", "2"});
  CHECK(d.code == 3);
  CHECK(d.err.find("node-distinctness") != std::string::npos);
}

TEST_CASE("converge") {
  const Result r = run({"converge", "--nodes", "family:golden:24", "--function", "builtin:exp_sum:40",
                        "--n-min", "2", "--n-max", "16"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("N,sup_error,ratio\n", 0) == 0);
  const auto err = csv_column(r.out, 1);
  REQUIRE(err.size() == 15);
  for (std::size_t i = 1; i < err.size(); ++i) CHECK(std::stod(err[i]) < std::stod(err[i - 1]));
  const auto ratio = csv_column(r.out, 2);
  CHECK(ratio.front().empty());
  CHECK(std::stod(ratio.back()) <= 0.5);

  // a cubic is reproduced from N = 4 on
  const Result p = run({"converge", "--nodes", "family:random:1:6", "--function", "builtin:randpoly:3",
                        "--n-min", "4", "--n-max", "6"});
  REQUIRE(p.code == 0);
  for (const auto& e : csv_column(p.out, 1)) CHECK(std::stod(e) < 1e-60);

  const Result j = run({"converge", "--nodes", "family:golden:6", "--n-max", "4", "--format", "json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc.is_array());
  CHECK(doc.size() == 3);
}

TEST_CASE("output is byte-identical for a fixed seed") {
  const std::vector<std::string> args{"identity", "--nodes", "family:random:0.9:6", "--seed", "17",
                                      "--n-max", "5", "--format", "json"};
  const Result a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Result c = run({"identity", "--nodes", "family:random:0.9:6", "--seed", "18", "--n-max", "5",
                        "--format", "json"});
  CHECK(c.out != a.out);

  const auto f1 = scratch("seq1.json"), f2 = scratch("seq2.json");
  CHECK(run({"counterexample", "--stages", "2", "--out", f1.string()}).code == 0);
  CHECK(run({"counterexample", "--stages", "2", "--out", f2.string()}).code == 0);
  CHECK(io::read_file(f1.string()) == io::read_file(f2.string()));
}

TEST_CASE("criterion") {
  const Result r = run({"criterion", "--nodes", "family:line:0,1,0:21", "--max-p", "20", "--max-q", "20"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("observed") != std::string::npos);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,q,raw,normalized");
  std::size_t zero_rows = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string p, q, raw;
    std::getline(cells, p, ',');
    std::getline(cells, q, ',');
    std::getline(cells, raw, ',');
    if (q == "0" && p != "0") {
      CHECK(raw == "0");
      ++zero_rows;
    }
  }
  CHECK(zero_rows == 20);
  CHECK(run({"criterion", "--nodes", "family:golden:4", "--max-p", "4"}).code == 2);
}

TEST_CASE("counterexample") {
  const auto growth = scratch("growth.csv");
  const Result r = run({"counterexample", "--stages", "5", "--growth-out", growth.string()});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["nodes"].size() == 15);
  CHECK(doc["stages"].size() == 5);
  CHECK(doc["growth"]["passed"] == true);
  const std::string csv = io::read_file(growth.string());
  CHECK(csv.rfind("p,achieved,target,precision_bits,pass\n", 0) == 0);
  const auto pass = csv_column(csv, 4);
  REQUIRE(pass.size() == 5);
  for (const auto& v : pass) CHECK(v == "true");

  // the sequence file round-trips and can be fed back in as a node set
  const auto seq = scratch("seq5.json");
  write(seq, r.out);
  const AdversarialSequence back = io::sequence_from_json(json::parse(r.out));
  CHECK(back.nodes.size() == 15);
  CHECK(verify_growth(back, default_kernel()).passed());
  const Result crit = run({"criterion", "--nodes", seq.string(), "--max-p", "14", "--max-q", "2"});
  CHECK(crit.code == 0);

  CHECK(run({"counterexample", "--stages", "0"}).code == 2);
  const Result z = run({"counterexample", "--stages", "1", "--function", "z"});
  CHECK(z.code == 3);
  CHECK(z.err.find("unsuitable-kernel") != std::string::npos);
}

TEST_CASE("identity") {
  CHECK(run({"identity", "--nodes", "family:random:1:8", "--n-max", "8"}).code == 0);
  // truncating the tail below the degree breaks the identity
  const Result t = run({"identity", "--nodes", "family:random:1:8", "--function", "builtin:randpoly:6",
                        "--max-order", "3", "--n-max", "2"});
  CHECK(t.code == 1);
  CHECK(t.err.find(" > tolerance") != std::string::npos);

  const Result s = run({"identity", "--nodes", "family:random:0.9:4", "--n-max", "2", "--sweep", "--grid", "0.5,2,1"});
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("N,z1_re,z1_im,z2_re,z2_im,residual,error\n", 0) == 0);
  CHECK(csv_column(s.out, 0).size() == 2 * 5);
}

TEST_CASE("mobius") {
  const Result r = run({"mobius", "--nodes", "family:integers:50", "--eta-inf", "0,1"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["passed"] == true);
  CHECK(std::stod(doc["max_theta"].get<std::string>()) <= std::stod(doc["theta_bound"].get<std::string>()));
  CHECK(std::stod(doc["unitarity_residual"].get<std::string>()) <= 1e-60);
  CHECK(doc["theta"].size() == 50);

  CHECK(run({"mobius", "--nodes", "family:integers:5", "--eta-inf", "3,0"}).code == 2);
  CHECK(run({"mobius", "--nodes", "family:integers:5", "--format", "csv"}).code == 2);
  CHECK(run({"mobius", "--nodes", "family:integers:5"}).code == 0);

  const Result inf = run({"mobius", "--nodes", "family:golden:4", "--eta-inf", "inf", "--phi", "0.5"});
  REQUIRE(inf.code == 0);
  CHECK(json::parse(inf.out)["theta"].size() == 4);
}

TEST_CASE("dd") {
  const auto nodes = scratch("three.json");
  write(nodes, R"({"nodes": [{"re": "1", "im": "0"}, {"re": "0", "im": "1"}, {"re": "-1", "im": "0"}]})");
  const Result r = run({"dd", "--nodes", nodes.string(), "--function", "conj"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("p,k,re,im\n", 0) == 0);
  // zero-order row holds the values themselves: conj(1), conj(i), conj(-1)
  CHECK(r.out.find("0,0,1,0\n") != std::string::npos);
  CHECK(r.out.find("0,1,0,-1\n") != std::string::npos);
  const Result j = run({"dd", "--nodes", nodes.string(), "--format", "json"});
  CHECK(j.code == 0);
  json parsed;
  CHECK_NOTHROW(parsed = json::parse(j.out));
  CHECK(parsed["rows"].size() == 3);
}

TEST_CASE("json round trips") {
  Rng rng(4);
  const NodeSequence nodes = random_disc_nodes(7, 2, 5, 320);
  const NodeSequence back = io::nodes_from_json(io::nodes_to_json(nodes), 320);
  for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(back[i] == nodes[i]);

  const TaylorSeries2 f = series::random_polynomial(5, 6, 256);
  const TaylorSeries2 g = io::series_from_json(io::series_to_json(f), 256);
  CHECK(g.max_order() == f.max_order());
  for (std::size_t m = 0; m <= 5; ++m) {
    for (std::size_t k = 0; k <= m; ++k) CHECK(g.coeff(k, m - k) == f.coeff(k, m - k));
  }

  // function files use the same format on the command line
  const auto path = scratch("f.json");
  write(path, io::series_to_json(f).dump());
  CHECK(run({"identity", "--nodes", "family:random:1:6", "--function", path.string(), "--n-max", "6"}).code == 0);

  const ApComplex z = holo::test::random_ap_complex(rng, 3, 512);
  CHECK(io::complex_from_json(io::to_json(z), 512) == z);
  CHECK(io::parse_complex("1.5,-2", 256) == ApComplex(holo::test::ap("1.5"), ApReal(-2, 256)));
}
