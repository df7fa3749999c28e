#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "gq/inequalities.hpp"
#include "gq/measures.hpp"
#include "gq/state_io.hpp"
#include "support.hpp"

using namespace gq;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gqc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "gq_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const auto p = scratch() / name;
  std::ofstream(p) << content;
  return p.string();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ls(line);
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Looks up `value` of the first row whose leading fields match `key`.
double lookup(const std::string& csv, const std::vector<std::string>& key) {
  for (const auto& row : parse_csv(csv)) {
    if (row.size() < key.size() + 1) continue;
    if (std::equal(key.begin(), key.end(), row.begin())) return std::stod(row.back());
  }
  FAIL("row not found");
  return std::nan("");
}

}  // namespace

TEST_CASE("cut parsing") {
  CHECK(cli::cut_label(cli::parse_cut("1|23", 3)) == "1|23");
  CHECK(cli::cut_label(cli::parse_cut("2", 3)) == "2|13");
  CHECK(cli::cut_label(cli::parse_cut("1,3|2", 3)) == "13|2");
  CHECK_CODE(cli::parse_cut("1|2", 3), ErrorCode::BadCut);
  CHECK_CODE(cli::parse_cut("4", 3), ErrorCode::BadSubsystem);
  CHECK_CODE(cli::parse_cut("x", 3), ErrorCode::BadCut);
}

TEST_CASE("measure: Bell state at q = 2") {
  const auto path = write_file("bell.json", R"({"n_qubits": 2, "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]})");
  const auto r = run({"measure", "--input", path, "--q", "2"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(lookup(r.out, {"Cq", "1|2", "2"}) - 0.70710678) < 1e-8);
  CHECK(std::abs(lookup(r.out, {"C", "1|2"}) - 1.0) < 1e-12);
}

TEST_CASE("measure: W3 across 1|23") {
  const auto path = write_file("w3.json", to_json(w_state(3)));
  const auto r = run({"measure", "--input", path, "--cut", "1|23", "--q", "1.5"});
  REQUIRE(r.code == 0);
  const double expect = gq_pure(SchmidtVector({2.0 / 3.0, 1.0 / 3.0}), QParam(1.5)).value;
  CHECK(std::abs(lookup(r.out, {"Cq", "1|23", "1.5"}) - expect) < 1e-11);
}

TEST_CASE("measure: product state is zero everywhere") {
  const auto path = write_file("prod.json", R"({"n_qubits": 2, "amplitudes": [[0, 0], [1, 0], [0, 0], [0, 0]]})");
  const auto r = run({"measure", "--input", path, "--q", "1.3,2,3"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows.size() == 1 + 2 * 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i].back())) < 1e-12);
}

TEST_CASE("measure: two-qubit mixed input") {
  const auto path = write_file("werner.json", to_json(werner(0.8)));
  const auto r = run({"measure", "--input", path, "--q", "1.5"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(lookup(r.out, {"C", "1|2"}) - 0.7) < 1e-10);
  CHECK(std::abs(lookup(r.out, {"Ca", "1|2"}) - 1.0) < 1e-10);
  CHECK(std::abs(lookup(r.out, {"hq_C", "1|2", "1.5"}) - h_q(0.7, QParam(1.5))) < 1e-10);
  CHECK(std::abs(lookup(r.out, {"hq_Ca", "1|2", "1.5"}) - h_q(1.0, QParam(1.5))) < 1e-10);

  const auto bad = run({"measure", "--input", path, "--q", "2.5"});
  CHECK(bad.code == cli::kExitInputError);
  CHECK(bad.err.find("RegimeError") != std::string::npos);
}

TEST_CASE("indicators on W3") {
  const auto r = run({"indicators", "--family", "w", "--n", "3", "--q", "1.5", "--focus", "1"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(lookup(r.out, {"tau", "1", "1.5"}) - tau_w_closed_form(3, QParam(1.5))) < 1e-10);
}

TEST_CASE("figures") {
  const auto dir = scratch() / "figs";
  const auto r = run({"figures", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const auto& f : cli::figure_files()) CHECK(fs::exists(dir / f));

  const auto fig5 = read_file(dir / "fig5_tauW.csv");
  CHECK(std::abs(lookup(fig5, {"tauW", "1.5", "3"}) - tau_w_closed_form(3, QParam(1.5))) < 1e-11);
  for (const auto& row : parse_csv(fig5))
    if (row[0] == "tauW") CHECK(std::stod(row.back()) > 0.0);

  const auto fig4 = parse_csv(read_file(dir / "fig4_ltilde.csv"));
  for (std::size_t i = 1; i < fig4.size(); ++i) CHECK(std::stod(fig4[i].back()) >= 0.0);

  const auto lim = read_file(dir / "fig3_limM.csv");
  CHECK(std::abs(lookup(lim, {"limM", "1"})) < 1e-12);
  CHECK(std::abs(lookup(lim, {"limM", "2"})) < 1e-12);

  const auto header = parse_csv(read_file(dir / "fig1_M.csv")).front();
  CHECK(header == std::vector<std::string>{"fn", "q", "x", "value"});

  CHECK(run({"figures", "--out", dir.string(), "--grid-step", "0.5"}).code == cli::kExitInputError);
}

TEST_CASE("audit: default run on 500 three-qubit states passes") {
  const auto csv = scratch() / "audit.csv";
  const auto r = run({"audit", "--qubits", "3", "--samples", "500", "--seed", "11", "--out", csv.string()});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.find("tangle W3 q=2 residual=") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto rows = parse_csv(read_file(csv));
  CHECK(rows.front() == std::vector<std::string>{"state_id", "focus", "q", "alpha", "lhs", "rhs_sum", "residual", "pass"});
  CHECK(rows.size() == 1 + 500 * 10 * 3);
}

TEST_CASE("audit: tangle check of W3 at q = 2 logs a zero residual") {
  const auto r = run({"audit", "--family", "w", "--n", "3", "--q", "2", "--kind", "monogamy"});
  CHECK(r.code == 0);
  const auto csv = scratch() / "w3_tangle.csv";
  const auto r2 = run({"audit", "--family", "w", "--n", "3", "--q", "2", "--kind", "monogamy", "--out", csv.string()});
  REQUIRE(r2.code == 0);
  const auto rows = parse_csv(read_file(csv));
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i][6])) <= 1e-10);
}

TEST_CASE("audit: violations exit 1 and serialize the state") {
  const auto r = run({"audit", "--samples", "3", "--kind", "monogamy", "--tolerance", "-1"});
  CHECK(r.code == cli::kExitViolation);
  CHECK(r.err.find("violation in monogamy") != std::string::npos);
  const auto json = r.err.substr(r.err.find('{'));
  CHECK_NOTHROW(parse_state(json.substr(0, json.find('\n'))));
}

TEST_CASE("audit: malformed JSON exits 2") {
  const auto path = write_file("bad.json", R"({"n_qubits": 2, "amplitudes": [[1, 0])");
  const auto r = run({"audit", "--input", path});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find("ParseError") != std::string::npos);
}

TEST_CASE("determinism and the seed environment fallback") {
  const auto a = scratch() / "a.csv";
  const auto b = scratch() / "b.csv";
  const auto c = scratch() / "c.csv";
  REQUIRE(run({"audit", "--samples", "20", "--seed", "77", "--kind", "monogamy", "--out", a.string()}).code == 0);
  REQUIRE(run({"audit", "--samples", "20", "--seed", "77", "--kind", "monogamy", "--workers", "3", "--out", b.string()}).code == 0);
  CHECK(read_file(a) == read_file(b));

  ::setenv("GQ_DEFAULT_SEED", "77", 1);
  REQUIRE(run({"audit", "--samples", "20", "--kind", "monogamy", "--out", c.string()}).code == 0);
  ::unsetenv("GQ_DEFAULT_SEED");
  CHECK(read_file(a) == read_file(c));

  ::setenv("GQ_DEFAULT_SEED", "not-a-number", 1);
  CHECK(run({"audit", "--samples", "2", "--kind", "monogamy"}).code == cli::kExitInputError);
  ::unsetenv("GQ_DEFAULT_SEED");
}

TEST_CASE("polygamy audit writes a companion file") {
  const auto csv = scratch() / "poly.csv";
  const auto r = run({"audit", "--samples", "2", "--q", "1.5", "--kind", "monogamy,polygamy", "--restarts", "4", "--out", csv.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(scratch() / "poly_polygamy.csv"));
}

TEST_CASE("roof command") {
  const auto r = run({"roof", "--family", "werner", "--werner-p", "0.8", "--q", "1.5"});
  REQUIRE(r.code == 0);
  CHECK(std::abs(lookup(r.out, {"roof_min", "1|2", "1.5"}) - h_q(0.7, QParam(1.5))) < 1e-6);
  const auto m = run({"roof", "--family", "ghz", "--n", "2", "--q", "2", "--maximize"});
  REQUIRE(m.code == 0);
  CHECK(std::abs(lookup(m.out, {"roof_max", "1|2", "2"}) - 1.0 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == cli::kExitInputError);
  CHECK(run({"nonsense"}).code == cli::kExitInputError);
  CHECK(run({"measure"}).code == cli::kExitInputError);
  CHECK(run({"measure", "--family", "w", "--q", "0.5"}).code == cli::kExitInputError);
  CHECK(run({"audit", "--samples", "0"}).code == cli::kExitInputError);
  CHECK(run({"audit", "--kind", "bogus"}).code == cli::kExitInputError);
  CHECK(run({"measure", "--input", (scratch() / "nope.json").string()}).code == cli::kExitInputError);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("the installed executable honours the exit-code contract") {
  const std::string exe = GQC_PATH;
  const auto bad = write_file("bad2.json", "{");
  CHECK(WEXITSTATUS(std::system((exe + " measure --input " + bad + " > /dev/null 2>&1").c_str())) == 2);
  CHECK(WEXITSTATUS(std::system((exe + " measure --family ghz --n 3 > /dev/null").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system((exe + " audit --samples 2 --kind monogamy --tolerance -1 > /dev/null 2>&1").c_str())) == 1);
}
