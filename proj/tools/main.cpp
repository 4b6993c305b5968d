#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmom/errors.hpp"
#include "bmom/report.hpp"
#include "bmom/version.hpp"

namespace {

struct Options {
  bmom::AnalysisRequest request;
  std::string format = "json";
  std::string out_path;
  std::string draws_out;
  bool intercept_flag = false;
  bool no_intercept_flag = false;
  bool seed_given = false;
  std::uint64_t seed_value = 0;
};

// flags every subcommand shares
void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--data", opt.request.data_path, "input CSV file")
      ->required();
  cmd->add_option("--y", opt.request.y_name, "response column")->required();
  cmd->add_option("--level", opt.request.level,
                  "interval coverage level, strictly inside (0,1)");
  cmd->add_option("--format", opt.format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", opt.out_path,
                  "write the report here instead of stdout");
}

void add_design(CLI::App* cmd, Options& opt) {
  cmd->add_option("--x", opt.request.x_names,
                  "regressor columns, comma separated")
      ->delimiter(',');
  cmd->add_flag("--intercept", opt.intercept_flag,
                "prepend a constant column");
  cmd->add_option("--prior-data", opt.request.prior_path,
                  "conceptual sample CSV stacked above the data");
  cmd->add_option("--prior-y", opt.request.prior_y,
                  "response column in the prior file (default: --y)");
}

void add_lags(CLI::App* cmd, Options& opt, bool required) {
  auto* lags =
      cmd->add_option("--lags", opt.request.lags, "autoregression order")
          ->check(CLI::PositiveNumber);
  if (required) lags->required();
  cmd->add_flag("--no-intercept", opt.no_intercept_flag,
                "drop the constant column the lag design adds by default");
}

void add_xf(CLI::App* cmd, Options& opt) {
  cmd->add_option("--xf", opt.request.x_f,
                  "regressor point for prediction, comma separated")
      ->delimiter(',');
}

void add_ell(CLI::App* cmd, Options& opt) {
  cmd->add_option("--ell", opt.request.ell,
                  "linear combination weights, comma separated")
      ->delimiter(',');
}

void add_seed(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed_value, "draw stream seed")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
}

int usage_error(const std::string& message) {
  std::cerr << "usage error: " << message << "\n";
  return 2;
}

bool design_given(const Options& opt) {
  return !opt.request.x_names.empty() || opt.request.intercept ||
         opt.request.lags >= 1;
}

int run(Options& opt) {
  if (!(opt.request.level > 0.0 && opt.request.level < 1.0))
    return usage_error("--level must lie strictly between 0 and 1");

  // seed: flag wins, environment fills in
  if (opt.seed_given) {
    opt.request.seed = opt.seed_value;
  } else if (const char* env = std::getenv("BMOM_SEED")) {
    std::uint64_t parsed = 0;
    const std::string text(env);
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), parsed);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
      return usage_error("BMOM_SEED is set but not an unsigned integer: '" +
                         text + "'");
    opt.request.seed = parsed;
  }

  if (opt.request.command == bmom::Command::sample && !opt.request.seed)
    return usage_error("sample needs --seed or the BMOM_SEED variable");
  if (opt.request.command == bmom::Command::predict && design_given(opt) &&
      opt.request.x_f.empty())
    return usage_error("predict on a regression design needs --xf");

  std::string body;
  std::string draws_body;
  try {
    if (opt.request.command == bmom::Command::density) {
      body = bmom::render_grid_tsv(bmom::density_grid(opt.request));
    } else {
      const bmom::AnalysisReport report = bmom::run_analysis(opt.request);
      body = opt.format == "text" ? bmom::render_text(report)
                                  : bmom::render_json(report);
    }
    if (!opt.draws_out.empty()) draws_body = bmom::draws_csv(opt.request);
  } catch (const bmom::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  // nothing is written until every requested artifact rendered cleanly
  if (opt.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << opt.out_path << "'\n";
      return 1;
    }
    out << body;
  }
  if (!opt.draws_out.empty()) {
    std::ofstream out(opt.draws_out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << opt.draws_out << "'\n";
      return 1;
    }
    out << draws_body;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "moment-based Bayesian inference for mean and regression models"};
  app.set_version_flag("--version", std::string("bmom ") + bmom::kVersion);
  app.require_subcommand(1);

  Options opt;

  auto* mean = app.add_subcommand("mean", "posterior for a sample mean");
  add_common(mean, opt);

  auto* regress = app.add_subcommand("regress", "posterior for a regression");
  add_common(regress, opt);
  add_design(regress, opt);
  add_ell(regress, opt);

  auto* ar = app.add_subcommand("ar", "autoregression on a single series");
  add_common(ar, opt);
  add_lags(ar, opt, true);

  auto* predict =
      app.add_subcommand("predict", "density of a future observation");
  add_common(predict, opt);
  add_design(predict, opt);
  add_lags(predict, opt, false);
  add_xf(predict, opt);

  auto* errors = app.add_subcommand("errors", "realized-error densities");
  add_common(errors, opt);
  add_design(errors, opt);
  add_lags(errors, opt, false);

  auto* sample = app.add_subcommand("sample", "joint posterior draws");
  add_common(sample, opt);
  add_design(sample, opt);
  add_lags(sample, opt, false);
  add_xf(sample, opt);
  add_seed(sample, opt);
  sample->add_option("--draws", opt.request.draws, "number of draws")
      ->check(CLI::PositiveNumber);
  sample->add_option("--draws-out", opt.draws_out,
                     "also write the raw draws to this CSV file");

  auto* compare = app.add_subcommand(
      "compare", "moment densities against the Student-t benchmark");
  add_common(compare, opt);
  add_design(compare, opt);
  add_lags(compare, opt, false);
  compare->add_option("--coef", opt.request.coef,
                      "coefficient name or 1-based position (default: first)");

  auto* density = app.add_subcommand("density", "tabulate one density");
  add_common(density, opt);
  add_design(density, opt);
  add_lags(density, opt, false);
  add_xf(density, opt);
  add_ell(density, opt);
  density->add_option("--target", opt.request.target,
                      "theta | sigma2 | predictive | coef:NAME | error:ROW | "
                      "combination | positive");
  density->add_option("--grid", opt.request.grid_points, "grid points")
      ->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;
  }

  if (mean->parsed()) opt.request.command = bmom::Command::mean;
  else if (regress->parsed()) opt.request.command = bmom::Command::regress;
  else if (ar->parsed()) opt.request.command = bmom::Command::ar;
  else if (predict->parsed()) opt.request.command = bmom::Command::predict;
  else if (errors->parsed()) opt.request.command = bmom::Command::errors;
  else if (sample->parsed()) opt.request.command = bmom::Command::sample;
  else if (compare->parsed()) opt.request.command = bmom::Command::compare;
  else if (density->parsed()) opt.request.command = bmom::Command::density;

  // lag designs carry a constant column unless --no-intercept says otherwise
  const bool ar_mode =
      opt.request.command == bmom::Command::ar || opt.request.lags >= 1;
  if (ar_mode)
    opt.request.intercept = !opt.no_intercept_flag;
  else
    opt.request.intercept = opt.intercept_flag;

  return run(opt);
}
