// Command-line front end for the eFGM copula library.
//
// Exit status: 0 success, 2 invalid input or inadmissible model (including
// unknown flags), 1 numeric or capability failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "efgm/efgm.hpp"

namespace {

using nlohmann::json;

enum class Format { csv, json };

struct Common {
  std::string format = "csv";
  unsigned threads = 1;

  Format fmt() const { return format == "json" ? Format::json : Format::csv; }
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Worker threads (output does not depend on it)")
      ->envname("EFGM_THREADS")
      ->check(CLI::PositiveNumber);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += efgm::format_shortest(v[i]);
  }
  return out;
}

std::string indexed_header(const char* prefix, int from, int to) {
  std::string out;
  for (int k = from; k <= to; ++k) {
    if (k > from) out += ',';
    out += prefix + std::to_string(k);
  }
  return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw efgm::invalid_input("cannot write file '" + path + "'");
  return file;
}

// check ---------------------------------------------------------------------

void run_check(const std::string& model_text, const Common& c) {
  const efgm::CopulaModel model = efgm::parse_model(model_text);
  const efgm::ThetaVector theta = std::holds_alternative<efgm::ThetaVector>(model)
                                      ? std::get<efgm::ThetaVector>(model)
                                      : efgm::theta_from_nd_pmf(efgm::canonicalize(model));
  const efgm::ConstraintReport report = efgm::admissibility_check(theta);
  if (!report.admissible) {
    throw efgm::inadmissible("constraint g(m) >= 0 fails at m=" + std::to_string(report.worst_m) +
                             ": g(" + std::to_string(report.worst_m) +
                             ") = " + efgm::format_shortest(report.worst_margin()));
  }
  if (c.fmt() == Format::json) {
    std::cout << json{{"admissible", true},
                      {"boundary", report.boundary},
                      {"worst_m", report.worst_m},
                      {"worst_margin", report.worst_margin()},
                      {"margins", report.margins}}
                     .dump()
              << '\n';
    return;
  }
  std::cout << "admissible,boundary,worst_m,worst_margin\n"
            << "true," << (report.boundary ? "true" : "false") << ',' << report.worst_m << ','
            << efgm::format_shortest(report.worst_margin()) << '\n';
}

// convert -------------------------------------------------------------------

void run_convert(const std::string& model_text, const std::string& to, const Common& c) {
  const efgm::CopulaModel model = efgm::parse_model(model_text);
  const efgm::NdPmf pmf = efgm::canonicalize(model);
  const int d = pmf.d();
  std::vector<double> values;
  std::string header;
  if (to == "theta") {
    values = efgm::theta_from_nd_pmf(pmf).values();
    header = indexed_header("theta_", 2, d);
  } else if (to == "ndpmf") {
    values = pmf.values();
    header = indexed_header("p_", 0, d);
  } else {
    values = efgm::zeta_from_nd_pmf(pmf).values();
    header = indexed_header("zeta_", 0, d);
  }
  if (c.fmt() == Format::json) {
    std::cout << json{{"type", to}, {"d", d}, {"values", values}}.dump() << '\n';
  } else {
    std::cout << header << '\n' << join(values) << '\n';
  }
}

// extreme-points --------------------------------------------------------------

void run_extreme_points(int d, const Common& c) {
  const auto points = efgm::enumerate_extreme_points(d);
  if (c.fmt() == Format::json) {
    json rows = json::array();
    for (const auto& p : points) {
      rows.push_back({{"j1", p.j1},
                      {"j2", p.j2},
                      {"p_j1", p.pmf.at(p.j1)},
                      {"p_j2", p.pmf.at(p.j2)},
                      {"theta", p.theta.values()}});
    }
    std::cout << json{{"d", d}, {"extreme_points", rows}}.dump() << '\n';
    return;
  }
  std::cout << "j1,j2,p_j1,p_j2," << indexed_header("theta_", 2, d) << '\n';
  for (const auto& p : points) {
    std::cout << p.j1 << ',' << p.j2 << ',' << efgm::format_shortest(p.pmf.at(p.j1)) << ','
              << efgm::format_shortest(p.pmf.at(p.j2)) << ',' << join(p.theta.values()) << '\n';
  }
}

// bounds ----------------------------------------------------------------------

void run_bounds(int d, const Common& c) {
  const efgm::ThetaVector end_t = efgm::end_theta(d);
  const efgm::ThetaVector epd_t = efgm::epd_theta(d);
  const efgm::NdPmf end_p = efgm::end_nd_pmf(d);
  const efgm::NdPmf epd_p = efgm::epd_nd_pmf(d);
  if (c.fmt() == Format::json) {
    std::cout << json{{"d", d},
                      {"END", {{"theta", end_t.values()}, {"pmf", end_p.values()}}},
                      {"EPD", {{"theta", epd_t.values()}, {"pmf", epd_p.values()}}}}
                     .dump()
              << '\n';
    return;
  }
  std::cout << "bound," << indexed_header("theta_", 2, d) << ',' << indexed_header("p_", 0, d)
            << '\n';
  std::cout << "END," << join(end_t.values()) << ',' << join(end_p.values()) << '\n';
  std::cout << "EPD," << join(epd_t.values()) << ',' << join(epd_p.values()) << '\n';
}

// cdf / density -----------------------------------------------------------------

void run_point(const std::string& model_text, const std::string& point, bool density,
               const Common& c) {
  const efgm::NdPmf pmf = efgm::canonicalize(efgm::parse_model(model_text));
  const std::vector<double> u = efgm::parse_point(point);
  const double value = density ? efgm::copula_density(pmf, u) : efgm::copula_cdf(pmf, u);
  if (c.fmt() == Format::json) {
    std::cout << json{{density ? "density" : "cdf", value}}.dump() << '\n';
  } else {
    std::cout << efgm::format_shortest(value) << '\n';
  }
}

// sample ------------------------------------------------------------------------

void run_sample(const std::string& model_text, std::size_t n, std::uint64_t seed,
                const std::string& out_path, const Common& c) {
  const efgm::CopulaModel model = efgm::parse_model(model_text);
  const efgm::SampleBatch batch = efgm::sample(model, n, seed, c.threads);
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  efgm::write_csv(out, batch.rows);
}

// estimate ----------------------------------------------------------------------

struct EstimateArgs {
  std::string input;
  bool pseudo_obs = false;
  double tol = 1e-8;
  int max_iter = 10'000;
  std::string weights_out;
  std::uint64_t seed_irrelevant = 0;
};

void run_estimate(const EstimateArgs& a, const Common& c) {
  efgm::Matrix data = efgm::read_csv_file(a.input);
  if (a.pseudo_obs) data = efgm::pseudo_observations(data);
  const int d = static_cast<int>(data.cols());
  efgm::EmOptions options{a.tol, a.max_iter, c.threads};
  const efgm::FitResult fit = efgm::em_fit(data, d, options);
  for (const auto& w : fit.warnings) std::cerr << "warning: " << w << '\n';
  if (!a.weights_out.empty()) {
    std::ofstream file;
    std::ostream& out = open_output(a.weights_out, file);
    const auto points = efgm::enumerate_extreme_points(d);
    out << "j1,j2,weight\n";
    for (std::size_t j = 0; j < points.size(); ++j) {
      out << points[j].j1 << ',' << points[j].j2 << ',' << efgm::format_shortest(fit.weights[j])
          << '\n';
    }
  }
  if (c.fmt() == Format::csv) {
    std::cout << indexed_header("theta_", 2, d) << ",loglik,iterations,converged\n"
              << join(fit.theta.values()) << ',' << efgm::format_shortest(fit.loglik()) << ','
              << fit.iterations << ',' << (fit.converged ? "true" : "false") << '\n';
    return;
  }
  std::cout << json{{"theta", fit.theta.values()},
                    {"loglik", fit.loglik()},
                    {"iterations", fit.iterations},
                    {"converged", fit.converged}}
                   .dump()
            << '\n';
}

// simstudy ----------------------------------------------------------------------

struct StudyArgs {
  int d = 10;
  std::size_t n = 10'000;
  int reps = 100;
  std::uint64_t seed = 1;
  std::string theta_file;
  std::string out;
  std::string reps_out;
  double tol = 1e-8;
  int max_iter = 10'000;
};

void run_simstudy(const StudyArgs& a, const Common& c) {
  efgm::StudyConfig config;
  if (!a.theta_file.empty()) {
    const efgm::CopulaModel model = efgm::parse_model(a.theta_file);
    config.theta = std::holds_alternative<efgm::ThetaVector>(model)
                       ? std::get<efgm::ThetaVector>(model)
                       : efgm::theta_from_nd_pmf(efgm::canonicalize(model));
  } else if (a.d != 10) {
    throw efgm::invalid_input("--theta-file is required unless d = 10");
  }
  if (config.theta.d() != a.d) {
    throw efgm::invalid_input("theta file has d=" + std::to_string(config.theta.d()) +
                              " but --d is " + std::to_string(a.d));
  }
  config.n = a.n;
  config.reps = a.reps;
  config.seed = a.seed;
  config.em = {a.tol, a.max_iter, c.threads};
  const efgm::StudyResult result = efgm::simulation_study(config);
  for (std::size_t r = 0; r < result.converged.size(); ++r) {
    if (!result.converged[r]) std::cerr << "warning: replication " << r << " did not converge\n";
  }

  std::ofstream summary_file;
  std::ostream& out = open_output(a.out, summary_file);
  if (c.fmt() == Format::json) {
    json rows = json::object();
    for (const auto& row : result.summary) rows[row.label] = row.values;
    out << json{{"d", a.d}, {"n", a.n}, {"reps", a.reps}, {"seed", a.seed}, {"summary", rows}}.dump()
        << '\n';
  } else {
    out << "statistic," << indexed_header("theta_", 2, a.d) << '\n';
    for (const auto& row : result.summary) out << row.label << ',' << join(row.values) << '\n';
  }
  if (!a.reps_out.empty()) {
    std::ofstream reps_file;
    std::ostream& rout = open_output(a.reps_out, reps_file);
    rout << "rep," << indexed_header("theta_", 2, a.d) << ",converged\n";
    for (std::size_t r = 0; r < result.estimates.size(); ++r) {
      rout << r << ',' << join(result.estimates[r].values()) << ','
           << (result.converged[r] ? "true" : "false") << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exchangeable FGM copulas: admissibility, bounds, evaluation, sampling, fitting"};
  app.require_subcommand(1);
  Common common;

  std::string model;
  std::string to = "theta";
  std::string point;
  int d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  EstimateArgs est;
  StudyArgs study;

  auto* check = app.add_subcommand("check", "Check admissibility of a model");
  check->add_option("--model", model, "Model JSON or file")->required();
  add_format(check, common);

  auto* convert = app.add_subcommand("convert", "Convert a model to another parameterization");
  convert->add_option("--model", model, "Model JSON or file")->required();
  convert->add_option("--to", to, "Target")->check(CLI::IsMember({"theta", "ndpmf", "zeta"}));
  add_format(convert, common);

  auto* extreme = app.add_subcommand("extreme-points", "List the extreme points for dimension d");
  extreme->add_option("--d", d, "Dimension")->required();
  add_format(extreme, common);

  auto* bounds = app.add_subcommand("bounds", "Lower (END) and upper (EPD) dependence bounds");
  bounds->add_option("--d", d, "Dimension")->required();
  add_format(bounds, common);

  auto* cdf = app.add_subcommand("cdf", "Evaluate the copula at a point");
  auto* density = app.add_subcommand("density", "Evaluate the copula density at a point");
  for (auto* cmd : {cdf, density}) {
    cmd->add_option("--model", model, "Model JSON or file")->required();
    cmd->add_option("--point", point, "Comma-separated coordinates")->required();
    add_format(cmd, common);
  }

  auto* sample = app.add_subcommand("sample", "Draw a sample as CSV");
  sample->add_option("--model", model, "Model JSON or file")->required();
  sample->add_option("--n", n, "Number of rows")->required();
  sample->add_option("--seed", seed, "Seed")->required();
  sample->add_option("--out", out, "Output file (default stdout)");
  add_threads(sample, common);

  auto* estimate = app.add_subcommand("estimate", "Fit a model to CSV data by EM");
  estimate->add_option("--input", est.input, "Data CSV")->required();
  estimate->add_flag("--pseudo-obs", est.pseudo_obs, "Rank-transform columns first");
  estimate->add_option("--tol", est.tol, "Relative log-likelihood tolerance");
  estimate->add_option("--max-iter", est.max_iter, "Iteration cap");
  estimate->add_option("--weights-out", est.weights_out, "Write vertex weights CSV");
  estimate->add_option("--seed-irrelevant", est.seed_irrelevant,
                       "Accepted and ignored; fitting is deterministic");
  add_format(estimate, common);
  add_threads(estimate, common);

  auto* simstudy = app.add_subcommand("simstudy", "Repeated sample-and-fit study");
  simstudy->add_option("--d", study.d, "Dimension");
  simstudy->add_option("--n", study.n, "Rows per replication");
  simstudy->add_option("--reps", study.reps, "Replications");
  simstudy->add_option("--seed", study.seed, "Seed");
  simstudy->add_option("--theta-file", study.theta_file, "Model JSON file with the true parameter");
  simstudy->add_option("--out", study.out, "Summary CSV (default stdout)");
  simstudy->add_option("--reps-out", study.reps_out, "Per-replication estimates CSV");
  simstudy->add_option("--tol", study.tol, "EM tolerance");
  simstudy->add_option("--max-iter", study.max_iter, "EM iteration cap");
  add_format(simstudy, common);
  add_threads(simstudy, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bool estimate_json = estimate->parsed() && estimate->count("--format") == 0;
  try {
    if (check->parsed()) run_check(model, common);
    if (convert->parsed()) run_convert(model, to, common);
    if (extreme->parsed()) run_extreme_points(d, common);
    if (bounds->parsed()) run_bounds(d, common);
    if (cdf->parsed()) run_point(model, point, false, common);
    if (density->parsed()) run_point(model, point, true, common);
    if (sample->parsed()) run_sample(model, n, seed, out, common);
    if (estimate->parsed()) {
      Common c = common;
      if (estimate_json) c.format = "json";
      run_estimate(est, c);
    }
    if (simstudy->parsed()) run_simstudy(study, common);
  } catch (const efgm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool user_error =
        e.kind() == efgm::ErrorKind::invalid_input || e.kind() == efgm::ErrorKind::inadmissible;
    return user_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: numeric-error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
