#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "cli_util.hpp"

using nlohmann::json;

namespace {

const std::string kCli = BMOM_CLI_PATH;
const std::string kData = BMOM_DATA_DIR;
const std::string kGolden = BMOM_GOLDEN_DIR;

std::string data(const std::string& name) {
  return cli::shell_quote(kData + "/" + name);
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Compares a command's stdout with a frozen golden file byte for byte.
// Setting BMOM_REGEN_GOLDEN rewrites the files instead (for intentional
// format changes; the diff then shows up in review). Golden commands run
// from the data directory with bare file names so the frozen reports stay
// free of machine-specific paths.
void check_golden(const std::string& name, const std::string& args) {
  const cli::Result result =
      cli::run("cd " + cli::shell_quote(kData) + " && " + kCli + " " + args);
  INFO("command: " << args);
  INFO("stderr: " << result.err);
  REQUIRE(result.status == 0);
  const std::string path = kGolden + "/" + name;
  if (std::getenv("BMOM_REGEN_GOLDEN")) {
    cli::write_file(path, result.out);
    return;
  }
  REQUIRE_MESSAGE(std::filesystem::exists(path),
                  "missing golden file " << path);
  CHECK_MESSAGE(result.out == cli::read_file(path),
                "output drifted from " << path);
}

}  // namespace

TEST_CASE("golden reports stay byte-identical") {
  check_golden("mean.json", "mean --data toy.csv --y y");
  check_golden("regress.json",
               "regress --data fixture.csv --y y --x x --intercept");
  check_golden("predict.json",
               "predict --data fixture.csv --y y --x x --intercept --xf 1,3");
  check_golden("compare.json", "compare --data toy.csv --y y");
  check_golden("errors.json",
               "errors --data fixture.csv --y y --x x --intercept");
  check_golden("sample.json",
               "sample --data fixture.csv --y y --x x --intercept --seed 42 "
               "--draws 1000 --xf 1,3");
  check_golden("ar.json", "ar --data series.csv --y y --lags 1");
  check_golden("prior.json",
               "regress --data fixture.csv --y y --x x --intercept "
               "--prior-data fixture.csv");
  check_golden("theta.tsv",
               "density --data toy.csv --y y --target theta --grid 11");
  check_golden("mean.txt", "mean --data toy.csv --y y --format text");
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string cmd = kCli + " sample --data " + data("fixture.csv") +
                          " --y y --x x --intercept --seed 9 --draws 500";
  const cli::Result a = cli::run(cmd);
  const cli::Result b = cli::run(cmd);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("version and help") {
  const cli::Result version = cli::run(kCli + " --version");
  CHECK(version.status == 0);
  CHECK(version.out == "bmom 0.1.0\n");
  const cli::Result help = cli::run(kCli + " --help");
  CHECK(help.status == 0);
  CHECK(help.out.find("mean") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli::run(kCli).status == 2);
  CHECK(cli::run(kCli + " mean").status == 2);  // --data and --y missing
  CHECK(cli::run(kCli + " mean --data x.csv --y y --frobnicate").status == 2);
  CHECK(cli::run(kCli + " frobnicate").status == 2);
  CHECK(cli::run(kCli + " sample --data " + data("fixture.csv") +
                 " --y y --x x --intercept")
            .status == 2);  // no seed anywhere
  CHECK(cli::run(kCli + " predict --data " + data("fixture.csv") +
                 " --y y --x x --intercept")
            .status == 2);  // regression predict without --xf
  CHECK(cli::run(kCli + " mean --data " + data("toy.csv") +
                 " --y y --level 1.5")
            .status == 2);
  CHECK(cli::run(kCli + " mean --data " + data("toy.csv") +
                 " --y y --level 1.0")
            .status == 2);
  CHECK(cli::run(kCli + " density --data " + data("toy.csv") +
                 " --y y --grid 1")
            .status == 2);
  CHECK(cli::run(kCli + " ar --data " + data("series.csv") + " --y y")
            .status == 2);  // --lags required
  CHECK(cli::run("BMOM_SEED=banana " + kCli + " sample --data " +
                 data("fixture.csv") + " --y y --x x --intercept")
            .status == 2);
}

TEST_CASE("analysis errors exit with 1 and a single stderr line") {
  const cli::Result missing =
      cli::run(kCli + " mean --data /nonexistent.csv --y y");
  CHECK(missing.status == 1);
  CHECK(missing.err.substr(0, 7) == "error: ");
  CHECK(missing.err.back() == '\n');
  CHECK(missing.err.find('\n') == missing.err.size() - 1);
  CHECK(missing.out.empty());

  CHECK(cli::run(kCli + " mean --data " + data("toy.csv") + " --y nope")
            .status == 1);
  CHECK(cli::run(kCli + " mean --data " + data("const.csv") + " --y y")
            .status == 1);
  CHECK(cli::run(kCli + " regress --data " + data("na.csv") +
                 " --y y --x x --intercept")
            .status == 1);
  CHECK(cli::run(kCli + " ar --data " + data("toy.csv") + " --y y --lags 2")
            .status == 1);  // 3 points leave 1 row for 3 columns
}

TEST_CASE("the report file appears only on success") {
  const std::string out_path =
      (std::filesystem::temp_directory_path() / "bmom_cli_out_test.json")
          .string();
  std::filesystem::remove(out_path);

  const cli::Result bad =
      cli::run(kCli + " mean --data " + data("const.csv") + " --y y --out " +
               cli::shell_quote(out_path));
  CHECK(bad.status == 1);
  CHECK_FALSE(std::filesystem::exists(out_path));

  const cli::Result good =
      cli::run(kCli + " mean --data " + data("toy.csv") + " --y y --out " +
               cli::shell_quote(out_path));
  REQUIRE(good.status == 0);
  CHECK(good.out.empty());
  const cli::Result direct =
      cli::run(kCli + " mean --data " + data("toy.csv") + " --y y");
  CHECK(cli::read_file(out_path) == direct.out);
  std::filesystem::remove(out_path);
}

TEST_CASE("seed flag and environment variable agree, flag wins") {
  const std::string base = kCli + " sample --data " + data("fixture.csv") +
                           " --y y --x x --intercept --draws 200";
  const cli::Result flag = cli::run(base + " --seed 42");
  const cli::Result env = cli::run("BMOM_SEED=42 " + base);
  const cli::Result both = cli::run("BMOM_SEED=7 " + base + " --seed 42");
  REQUIRE(flag.status == 0);
  CHECK(flag.out == env.out);
  CHECK(flag.out == both.out);
}

TEST_CASE("draw export file matches the report's stream") {
  const std::string draws_path =
      (std::filesystem::temp_directory_path() / "bmom_cli_draws_test.csv")
          .string();
  std::filesystem::remove(draws_path);
  const cli::Result run = cli::run(
      kCli + " sample --data " + data("fixture.csv") +
      " --y y --x x --intercept --seed 11 --draws 5 --draws-out " +
      cli::shell_quote(draws_path));
  REQUIRE(run.status == 0);
  const std::string csv = cli::read_file(draws_path);
  CHECK(csv.substr(0, csv.find('\n')) == "sigma2,const,x");
  // header plus five rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  std::filesystem::remove(draws_path);
}

TEST_CASE("density grid output parses and normalizes") {
  const cli::Result result =
      cli::run(kCli + " density --data " + data("toy.csv") +
               " --y y --target theta --grid 201");
  REQUIRE(result.status == 0);
  REQUIRE(result.out.substr(0, 6) == "x\tpdf\n");
  double mass = 0.0, prev_x = 0.0, prev_pdf = 0.0;
  bool first = true;
  std::size_t line_count = 0;
  std::size_t pos = 6;
  while (pos < result.out.size()) {
    const std::size_t tab = result.out.find('\t', pos);
    const std::size_t end = result.out.find('\n', tab);
    const double x = std::stod(result.out.substr(pos, tab - pos));
    const double pdf = std::stod(result.out.substr(tab + 1, end - tab - 1));
    if (!first) mass += 0.5 * (pdf + prev_pdf) * (x - prev_x);
    prev_x = x;
    prev_pdf = pdf;
    first = false;
    ++line_count;
    pos = end + 1;
  }
  CHECK(line_count == 201);
  CHECK(close(mass, 1.0, 1e-3));
}

TEST_CASE("cli mean equals cli intercept-only regress") {
  const cli::Result mean =
      cli::run(kCli + " mean --data " + data("toy.csv") + " --y y");
  const cli::Result regress = cli::run(kCli + " regress --data " +
                                       data("toy.csv") + " --y y --intercept");
  REQUIRE(mean.status == 0);
  REQUIRE(regress.status == 0);
  const json m = json::parse(mean.out);
  const json r = json::parse(regress.out);
  CHECK(m["moments"]["s2"] == r["moments"]["s2"]);
  CHECK(m["moments"]["dof"] == r["moments"]["dof"]);
  CHECK(close(m["moments"]["estimates"][0]["value"].get<double>(),
              r["moments"]["estimates"][0]["value"].get<double>(), 1e-12));
  CHECK(close(m["intervals"][0]["lower"].get<double>(),
              r["intervals"][0]["lower"].get<double>(), 1e-12));
  CHECK(close(m["intervals"][0]["upper"].get<double>(),
              r["intervals"][0]["upper"].get<double>(), 1e-12));
  // the theta marginal shows up as the const coefficient's marginal
  auto find_density = [](const json& rep, const std::string& target) {
    for (const json& d : rep["densities"])
      if (d["target"] == target) return d;
    return json();
  };
  const json theta = find_density(m, "theta");
  const json coef = find_density(r, "coef:const");
  REQUIRE_FALSE(theta.is_null());
  REQUIRE_FALSE(coef.is_null());
  CHECK(close(theta["location"].get<double>(), coef["location"].get<double>(),
              1e-12));
  CHECK(close(theta["scale"].get<double>(), coef["scale"].get<double>(),
              1e-12));
}

TEST_CASE("lag flags on shared commands build the ar design") {
  const cli::Result compare = cli::run(kCli + " compare --data " +
                                       data("series.csv") + " --y y --lags 1");
  REQUIRE(compare.status == 0);
  const json rep = json::parse(compare.out);
  CHECK(rep["model"] == "ar");
  CHECK(rep["data"]["columns"][0] == "const");
  CHECK(rep["data"]["columns"][1] == "lag1");
  // --no-intercept drops the constant column
  const cli::Result bare =
      cli::run(kCli + " errors --data " + data("series.csv") +
               " --y y --lags 1 --no-intercept");
  REQUIRE(bare.status == 0);
  CHECK(json::parse(bare.out)["data"]["columns"][0] == "lag1");
}
