// wvu: uncertainty reports, model sweeps, randomized verification and the
// Gaussian grid check from the command line.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage, parse or I/O error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wvu/bounds.hpp"
#include "wvu/continuous.hpp"
#include "wvu/error.hpp"
#include "wvu/harness.hpp"
#include "wvu/io.hpp"
#include "wvu/models.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct ToleranceFlags {
  double zero = wvu::kDefaultZeroTol;
  double degeneracy = wvu::kDefaultDegeneracyTol;
  double hermitian = 1e-9;
};

void add_tolerance_flags(CLI::App* cmd, ToleranceFlags& tol) {
  cmd->add_option("--tol-zero", tol.zero, "Zero-expectation threshold for <Pi_i>")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-degeneracy", tol.degeneracy, "Relative eigenvalue grouping tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-hermitian", tol.hermitian, "Relative Hermiticity tolerance")
      ->check(CLI::PositiveNumber);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    wvu::write_text_file(out_path, content);
  }
}

int run_report(const std::string& path, const ToleranceFlags& tol, bool tol_given) {
  wvu::ProblemSpec problem = wvu::load_problem(path);
  if (tol_given) {
    problem.options.zero_tol = tol.zero;
    problem.options.degeneracy_tol = tol.degeneracy;
    problem.options.hermitian_tol = tol.hermitian;
  }
  const auto report = wvu::schrodinger_report(problem.a, problem.b, problem.psi, problem.options);
  std::cout << wvu::report_to_json(report).dump(2) << "\n";
  return 0;
}

std::string reproducer_json(const wvu::HarnessSummary& summary, std::uint64_t seed) {
  const auto& inst = *summary.first_failure;
  auto j = nlohmann::ordered_json::parse(wvu::dump_problem(wvu::problem_from_instance(inst)));
  j["reproducer"] = nlohmann::ordered_json{{"seed", seed},
                                           {"dim", inst.dim},
                                           {"mode", std::string(wvu::to_string(inst.mode))},
                                           {"index", inst.index},
                                           {"invariant", summary.first_failure_invariant}};
  return j.dump(2) + "\n";
}

int run_random_verify(const wvu::HarnessConfig& config, const std::string& repro_path) {
  const wvu::HarnessSummary summary = wvu::run_harness(config);

  std::string dims, modes;
  for (auto d : config.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  for (auto m : config.modes) modes += (modes.empty() ? "" : ",") + std::string(wvu::to_string(m));
  std::printf("seed=%llu dims=%s samples=%zu modes=%s instances=%zu\n",
              static_cast<unsigned long long>(config.seed), dims.c_str(), config.samples_per_dim,
              modes.c_str(), summary.instances);
  std::printf("%-28s %-10s %-14s %s\n", "invariant", "tolerance", "max_violation", "failures");
  for (const auto& s : summary.stats)
    std::printf("%-28s %-10.1e %-14.3e %zu\n", s.name.c_str(), s.tolerance, s.max_violation,
                s.failures);

  if (summary.passed()) {
    std::printf("result: PASS\n");
    return 0;
  }
  const auto& inst = *summary.first_failure;
  std::printf("result: FAIL (first: %s at dim=%zu mode=%s index=%zu)\n",
              summary.first_failure_invariant.c_str(), inst.dim,
              std::string(wvu::to_string(inst.mode)).c_str(), inst.index);
  const std::string repro = reproducer_json(summary, config.seed);
  if (repro_path.empty()) {
    std::printf("reproducer:\n%s", repro.c_str());
  } else {
    wvu::write_text_file(repro_path, repro);
    std::printf("reproducer written to %s\n", repro_path.c_str());
  }
  std::fflush(stdout);
  return kExitViolation;
}

struct GaussianFlags {
  wvu::GaussianFamilyParams params{0.0, 1.0, 0.0, 0.0};
  double hbar = 1.0;
  std::size_t n_points = wvu::kDefaultGridPoints;
  std::optional<double> x_min;
  std::optional<double> x_max;
};

int run_gaussian(const GaussianFlags& flags) {
  if (!(flags.params.mu > 0.0))
    throw wvu::Error(wvu::ErrorCode::ValidationError, "--mu must be > 0");
  if (!(flags.hbar > 0.0)) throw wvu::Error(wvu::ErrorCode::ValidationError, "--hbar must be > 0");
  wvu::GridSpec grid = wvu::default_grid(flags.params, flags.hbar, flags.n_points);
  if (flags.x_min) grid.x_min = *flags.x_min;
  if (flags.x_max) grid.x_max = *flags.x_max;

  const auto psi = wvu::gaussian_mus(flags.params, grid);
  const auto params = flags.params;
  const double hbar = flags.hbar;
  const auto check = wvu::schrodinger_check_continuous(
      [&](double x) { return wvu::gaussian_mus_amplitude(params, hbar, x); }, grid,
      std::numeric_limits<double>::infinity());
  const auto m = wvu::moments(psi);

  using wvu::round15;
  nlohmann::ordered_json j;
  j["params"] = nlohmann::ordered_json{{"lambda", params.lambda},
                                       {"mu", params.mu},
                                       {"mean_x", params.mean_x},
                                       {"mean_p", params.mean_p},
                                       {"hbar", hbar}};
  j["grid"] = nlohmann::ordered_json{
      {"x_min", round15(grid.x_min)}, {"x_max", round15(grid.x_max)}, {"n_points", grid.n_points}};
  j["mean_x"] = round15(m.mean_x);
  j["mean_p"] = round15(m.mean_p);
  j["var_x"] = round15(check.var_x);
  j["var_p"] = round15(check.var_p);
  j["commutator_term"] = round15(0.25 * hbar * hbar);
  j["covariance_term"] = round15(check.covariance * check.covariance);
  j["lhs"] = round15(check.lhs);
  j["rhs"] = round15(check.rhs);
  j["gap"] = round15(check.gap);
  j["gap_over_lhs"] = round15(std::abs(check.gap) / check.lhs);
  j["refinement_relative_change"] = round15(check.relative_change);
  j["phase_residual"] =
      round15(wvu::phase_condition_residual(psi, params.lambda, params.mean_x, params.mean_p));
  j["modulus_residual"] = round15(wvu::modulus_condition_residual(psi, params.mu, params.mean_x));
  j["discord_p_given_x"] = round15(wvu::discord_p_given_x(psi));
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak-value operators and variance uncertainty bounds"};
  app.require_subcommand(1);

  ToleranceFlags tol;

  std::string report_path;
  auto* report = app.add_subcommand("report", "Uncertainty report (JSON) for a problem file");
  report->add_option("problem_file", report_path, "ProblemSpec JSON file")->required();
  add_tolerance_flags(report, tol);

  std::size_t res = 200;
  double theta = 0.0;
  std::string out1;
  auto* spin1 = app.add_subcommand("sweep-spin1", "Spin-1 extra-term sweep over the state octant");
  spin1->add_option("--res", res, "Grid points per angle")->capture_default_str();
  spin1->add_option("--theta", theta, "Relative phase of x (radians)")->capture_default_str();
  spin1->add_option("--out", out1, "CSV output path (stdout if omitted)");

  double t_min = -3.0, t_max = 3.0;
  std::size_t steps = 601;
  std::string out32;
  auto* spin32 = app.add_subcommand("sweep-spin32", "Spin-3/2 bound hierarchy along t");
  spin32->add_option("--tmin", t_min, "First t")->capture_default_str();
  spin32->add_option("--tmax", t_max, "Last t")->capture_default_str();
  spin32->add_option("--steps", steps, "Number of t values")->capture_default_str();
  spin32->add_option("--out", out32, "CSV output path (stdout if omitted)");

  wvu::HarnessConfig harness;
  harness.dims = {3, 4, 5, 6};
  harness.samples_per_dim = 1000;
  std::vector<std::string> mode_names{"none", "degenerate_B", "orthogonal_psi"};
  std::string repro_path;
  auto* verify = app.add_subcommand("random-verify", "Seeded randomized invariant verification");
  verify->add_option("--seed", harness.seed, "64-bit seed")->capture_default_str();
  verify->add_option("--dims", harness.dims, "Comma-separated dimensions")->capture_default_str()
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  verify->add_option("--samples", harness.samples_per_dim, "Samples per dimension and mode")->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify
      ->add_option("--modes", mode_names, "Comma-separated: none, degenerate_B, orthogonal_psi")->capture_default_str()
      ->delimiter(',')
      ->check(CLI::IsMember({"none", "degenerate_B", "orthogonal_psi"}));
  verify->add_option("--repro", repro_path, "Write the first failing instance here");
  add_tolerance_flags(verify, tol);

  GaussianFlags gauss;
  double x_min = 0.0, x_max = 0.0;
  auto* gaussian = app.add_subcommand("gaussian", "Position-momentum check on a Gaussian state");
  gaussian->add_option("--lambda", gauss.params.lambda, "Phase curvature")->capture_default_str();
  gaussian->add_option("--mu", gauss.params.mu, "Modulus curvature (> 0)")->capture_default_str();
  gaussian->add_option("--mean-x", gauss.params.mean_x, "Center <x>")->capture_default_str();
  gaussian->add_option("--mean-p", gauss.params.mean_p, "Momentum <p>")->capture_default_str();
  gaussian->add_option("--hbar", gauss.hbar, "Reduced Planck constant")->capture_default_str();
  gaussian->add_option("--n-points", gauss.n_points, "Grid points")->capture_default_str();
  auto* x_min_opt = gaussian->add_option("--x-min", x_min, "Grid start");
  auto* x_max_opt = gaussian->add_option("--x-max", x_max, "Grid end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*report) {
      const bool tol_given = report->count("--tol-zero") + report->count("--tol-degeneracy") +
                                 report->count("--tol-hermitian") >
                             0;
      return run_report(report_path, tol, tol_given);
    }
    if (*spin1) {
      emit(out1, wvu::spin1_csv(wvu::sweep_spin1(res, theta)));
      return 0;
    }
    if (*spin32) {
      emit(out32, wvu::spin32_csv(wvu::sweep_spin32(t_min, t_max, steps)));
      return 0;
    }
    if (*verify) {
      harness.modes.clear();
      for (const auto& name : mode_names) harness.modes.push_back(*wvu::parse_degeneracy_mode(name));
      harness.options.zero_tol = tol.zero;
      harness.options.degeneracy_tol = tol.degeneracy;
      harness.options.hermitian_tol = tol.hermitian;
      return run_random_verify(harness, repro_path);
    }
    if (*gaussian) {
      if (x_min_opt->count() > 0) gauss.x_min = x_min;
      if (x_max_opt->count() > 0) gauss.x_max = x_max;
      return run_gaussian(gauss);
    }
  } catch (const wvu::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
