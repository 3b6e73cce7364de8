#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bikoeff/cli.hpp"

using namespace bikoeff;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_SUITE("cli.bounds") {
  TEST_CASE("starlike constants with both a5 variants") {
    auto r = cli({"bounds", "st:lambda=0:order:rho=0", "--coeffs", "a2,a3,a4,a5", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = document_from_json(r.out);
    REQUIRE(doc.rows.size() == 5);
    CHECK(doc.rows[0].bound == doctest::Approx(1.414214).epsilon(1e-6));
    CHECK(doc.rows[1].bound == doctest::Approx(2.0));
    CHECK(doc.rows[2].bound == doctest::Approx(2.552285).epsilon(1e-6));
    CHECK(doc.rows[3].bound == doctest::Approx(3.109476).epsilon(1e-6));
    CHECK(doc.rows[4].bound == doctest::Approx(3.109476).epsilon(1e-6));
    CHECK(*doc.rows[3].variant == "stated");
    CHECK(*doc.rows[4].variant == "proof");
    CHECK(*doc.provenance.variant == "proof");
    CHECK(doc.spec == "st:lambda=0:order:rho=0");
  }

  TEST_CASE("convex class a2 is B1/2") {
    auto r = cli({"bounds", "m:lambda=1:order:rho=0", "--coeffs", "a2", "--format", "csv"});
    REQUIRE(r.code == 0);
    auto docs = documents_from_csv(r.out);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].rows[0].bound == 1.0);
  }

  TEST_CASE("strong class a3 takes the 4 beta^2/(1 + beta) piece") {
    auto r = cli({"bounds", "st:lambda=0:strong:beta=0.5", "--coeffs", "a3", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(document_from_json(r.out).rows[0].bound == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }

  TEST_CASE("strong a5 defaults to the stated variant") {
    auto r = cli({"bounds", "ss:beta=0.5", "--coeffs", "a5", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = document_from_json(r.out);
    CHECK(*doc.provenance.variant == "stated");
    CHECK(std::abs(doc.rows[0].bound - 0.409605) < 1e-6);
  }

  TEST_CASE("table output is aligned text") {
    auto r = cli({"bounds", "st:lambda=1/2:janowski:A=1,B=0"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "spec: st:lambda=1/2:janowski:A=1,B=0");
    const auto col = ls[1].find("bound");
    for (std::size_t i = 2; i < ls.size(); ++i) {
      CHECK(ls[i][col - 1] == ' ');
      CHECK(ls[i][col] != ' ');
    }
  }

  TEST_CASE("errors exit 1 and name the problem") {
    auto r = cli({"bounds", "st:lambda=0:order:sigma=1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("sigma") != std::string::npos);
    r = cli({"bounds", "st:lambda=0:custom:b1=1,b2=2,b3=0"});
    CHECK(r.code == 1);
    CHECK(r.err.find("bound formula degenerate for this generator") != std::string::npos);
    CHECK(cli({"bounds", "st:lambda=0:order:rho=0", "--format", "xml"}).code == 1);
    CHECK(cli({"bounds", "st:lambda=0:janowski:A=1,B=-1", "--coeffs", "a5"}).code == 1);
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
  }

  TEST_CASE("help exits 0") {
    auto r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bounds") != std::string::npos);
  }
}

TEST_SUITE("cli.verify") {
  TEST_CASE("clean run exits 0 and reports slack") {
    auto r = cli({"verify", "st:lambda=0.5:order:rho=0.25", "--target", "a4", "--samples", "400", "--seed", "7",
                  "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = document_from_json(r.out);
    REQUIRE(doc.rows.size() == 1);
    REQUIRE(doc.rows[0].oracle_best);
    CHECK(*doc.rows[0].slack >= -1e-8);
    CHECK(*doc.rows[0].slack == doctest::Approx(doc.rows[0].bound - *doc.rows[0].oracle_best));
  }

  TEST_CASE("a5 reports both variants") {
    auto r = cli({"verify", "ss:beta=0.5", "--target", "a5", "--samples", "300", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = document_from_json(r.out);
    REQUIRE(doc.rows.size() == 2);
    CHECK(*doc.rows[0].variant == "stated");
    CHECK(*doc.rows[1].variant == "rederived");
    CHECK(doc.rows[0].oracle_best == doc.rows[1].oracle_best);
  }

  TEST_CASE("a violation exits 2 with the witness on stderr") {
    OracleReport r;
    r.spec = make_spec(OperatorKind::ST, 0, order_coeffs(0));
    r.best_value = 1.5;
    r.bound_value = std::sqrt(2.0);
    r.violated = true;
    r.witness_p = {Complex{1.5, 0.0}};
    std::ostringstream err;
    CHECK(verify_exit_code(r, err) == kExitViolation);
    CHECK(err.str().find("witness") != std::string::npos);
    CHECK(err.str().find("\"p\":[[1.5,0.0]]") != std::string::npos);
    r.violated = false;
    std::ostringstream quiet;
    CHECK(verify_exit_code(r, quiet) == kExitOk);
    CHECK(quiet.str().empty());
    CHECK(cli({"verify", "st:lambda=0:order:rho=0", "--target", "a2", "--tol-violation", "-1"}).code == 1);
  }

  TEST_CASE("usage errors exit 1") {
    CHECK(cli({"verify", "bad:spec", "--target", "a2"}).code == 1);
    CHECK(cli({"verify", "st:lambda=0:order:rho=0"}).code == 1);
    CHECK(cli({"verify", "st:lambda=0:order:rho=0", "--target", "a9"}).code == 1);
    CHECK(cli({"verify", "st:lambda=0:order:rho=0", "--target", "a2", "--samples", "0"}).code == 1);
  }

  TEST_CASE("seed comes from the environment unless given") {
    const std::vector<std::string> base = {"verify", "m:lambda=1/2:order:rho=0", "--target", "a3", "--samples",
                                           "200", "--refine-steps", "2", "--format", "csv"};
    auto explicit_seed = base;
    explicit_seed.insert(explicit_seed.end(), {"--seed", "11"});
    const auto want = cli(explicit_seed).out;
    ::setenv("BIKOEFF_SEED", "11", 1);
    const auto from_env = cli(base).out;
    auto override_seed = base;
    override_seed.insert(override_seed.end(), {"--seed", "0"});
    const auto overridden = cli(override_seed).out;
    ::unsetenv("BIKOEFF_SEED");
    const auto zero = cli(base).out;
    CHECK(from_env == want);
    CHECK(overridden == zero);
  }

  TEST_CASE("config file supplies defaults and flags override it") {
    const auto path = temp_file("bikoeff_test.conf");
    {
      std::ofstream f(path);
      f << "# search settings\nsamples = 150\nseed = 4\n";
    }
    const std::vector<std::string> flags = {"verify", "st:lambda=1:order:rho=1/2", "--target", "a2", "--format",
                                            "csv", "--refine-steps", "2"};
    auto with_file = flags;
    with_file.insert(with_file.end(), {"--config", path.string()});
    auto explicit_flags = flags;
    explicit_flags.insert(explicit_flags.end(), {"--samples", "150", "--seed", "4"});
    CHECK(cli(with_file).out == cli(explicit_flags).out);

    auto overridden = with_file;
    overridden.insert(overridden.end(), {"--seed", "9"});
    auto explicit_nine = flags;
    explicit_nine.insert(explicit_nine.end(), {"--samples", "150", "--seed", "9"});
    CHECK(cli(overridden).out == cli(explicit_nine).out);

    {
      std::ofstream f(path);
      f << "nonsense = 1\n";
    }
    CHECK(cli(with_file).code == 1);
    std::filesystem::remove(path);
    CHECK(cli(with_file).code == 1);
  }
}

TEST_SUITE("cli.expand") {
  TEST_CASE("generators print exactly") {
    auto r = cli({"expand", "strong:beta=1/3"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 + (2/3)z + (2/9)z^2 + (22/81)z^3\n");
    CHECK(cli({"expand", "order:rho=0"}).out == "1 + 2z + 2z^2 + 2z^3\n");
  }

  TEST_CASE("inverse prints the reversion polynomials") {
    auto r = cli({"expand", "st:lambda=0:order:rho=0", "--input", "inverse"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "w^2: -a2");
    CHECK(ls[1] == "w^3: 2*a2^2 - a3");
    CHECK(ls[2] == "w^4: -5*a2^3 + 5*a2*a3 - a4");
    CHECK(ls[3] == "w^5: 14*a2^4 - 21*a2^2*a3 + 6*a2*a4 + 3*a3^2 - a5");
  }

  TEST_CASE("operator left-hand side at lambda = 0 is z f'/f") {
    auto r = cli({"expand", "st:lambda=0:order:rho=0", "--input", "operator_lhs"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("z^1: a2\n") != std::string::npos);
    CHECK(r.out.find("z^2: -a2^2 + 2*a3\n") != std::string::npos);
  }
}

TEST_SUITE("cli.sweep") {
  TEST_CASE("a5 over rho gives two rows per grid point") {
    auto r = cli({"sweep", "st:lambda=0:order:rho={}", "--param", "rho", "--range", "0,0.5,6", "--coeffs", "a5"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 13);
    CHECK(ls[0] == "param,coeff,bound,branch,variant");
    CHECK(fields(ls[1])[4] == "stated");
    CHECK(fields(ls[2])[4] == "proof");
    CHECK(fields(ls[11])[0] == "0.5");
  }

  TEST_CASE("a2 over lambda is non-increasing") {
    auto r = cli({"sweep", "st:lambda={lambda}:order:rho=0", "--param", "lambda", "--range", "0,2,21", "--coeffs",
                  "a2"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 22);
    double prev = INFINITY;
    for (std::size_t i = 1; i < ls.size(); ++i) {
      const double v = std::stod(fields(ls[i])[2]);
      CHECK(v <= prev);
      prev = v;
    }
  }

  TEST_CASE("writes to a file") {
    const auto path = temp_file("bikoeff_sweep.csv");
    auto r = cli({"sweep", "m:lambda={}:order:rho=1/4", "--range", "0,1,3", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(lines(ss.str()).size() == 1 + 3 * 3);
    std::filesystem::remove(path);
  }

  TEST_CASE("bad ranges and templates are errors") {
    CHECK(cli({"sweep", "st:lambda={}:order:rho=0", "--range", "0,2,1"}).code == 1);
    CHECK(cli({"sweep", "st:lambda={}:order:rho=0", "--range", "0,0,5"}).code == 1);
    CHECK(cli({"sweep", "st:lambda={}:order:rho=0", "--range", "0,2"}).code == 1);
    CHECK(cli({"sweep", "st:lambda=0:order:rho=0", "--range", "0,2,3"}).code == 1);
    CHECK(cli({"sweep", "st:lambda={}:order:rho={}", "--range", "0,1/2,3"}).code == 1);
    CHECK(cli({"sweep", "st:lambda={}:order:rho=0", "--range", "0,1,3", "--out", "/nonexistent/dir/x.csv"}).code ==
          1);
  }
}

TEST_SUITE("cli.report") {
  TEST_CASE("small report covers the grid and round-trips") {
    auto r = cli({"report", "--samples", "20", "--a5-samples", "20", "--refine-steps", "1", "--format", "json", "--threads", "4"});
    REQUIRE(r.code == 0);
    auto docs = documents_from_json(r.out);
    CHECK(docs.size() == soundness_grid().size() + a5_grid().size());
    auto again = cli({"report", "--samples", "20", "--a5-samples", "20", "--refine-steps", "1", "--format", "csv", "--threads", "1"});
    REQUIRE(again.code == 0);
    CHECK(documents_from_csv(again.out) == docs);
  }
}
