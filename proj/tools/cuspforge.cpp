// cuspforge: batch verification and sweeps.
//
// Settings are resolved as built-in defaults, then --config, then explicit flags.
// Exit codes: 0 pass, 1 check failure, 2 usage or configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cuspforge/suites.hpp"

namespace {

struct Overrides {
  std::optional<int> n, samples;
  std::optional<long> d;
  std::optional<double> A, l, t0, eps;
  std::optional<std::uint64_t> seed;
  std::string config;

  void add_to(CLI::App* cmd, bool field_options) {
    cmd->add_option("--n", n, "complex dimension");
    cmd->add_option("--A", A, "cutoff length");
    cmd->add_option("--l", l, "central lattice period");
    cmd->add_option("--t0", t0, "horoball level");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--config", config, "flat JSON config file")->check(CLI::ExistingFile);
    if (field_options) {
      cmd->add_option("--d", d, "squarefree d of Q(sqrt(-d)); 0 runs {1,2,3,7}");
      cmd->add_option("--eps", eps, "approximation tolerance");
      cmd->add_option("--samples", samples, "random samples per check");
    }
  }

  cuspforge::SuiteConfig resolve() const {
    cuspforge::SuiteConfig cfg = config.empty() ? cuspforge::SuiteConfig{} : cuspforge::load_config(config);
    if (n) cfg.n = *n;
    if (d) cfg.d = *d;
    if (A) cfg.A = *A;
    if (l) cfg.l = *l;
    if (t0) cfg.t0 = *t0;
    if (eps) cfg.eps = *eps;
    if (samples) cfg.samples = *samples;
    if (seed) cfg.seed = *seed;
    return cfg;
  }
};

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return &std::cout;
  file.open(path);
  if (!file) throw cuspforge::UsageError("cannot write '" + path + "'");
  return &file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspforge: verification harness for cusp-closing metrics and arithmetic lattices"};
  app.require_subcommand(1);

  Overrides verify_opts, sweep_opts;
  std::string suite, out;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite and emit a JSON report");
  verify->add_option("suite", suite, "profile | curvature | cayley | psh | bundle | all")->required();
  verify->add_option("--out", out, "report path (default stdout)");
  verify_opts.add_to(verify, true);

  std::string axis, sweep_out;
  double from = 0, to = 0;
  int steps = 0;
  CLI::App* sw = app.add_subcommand("sweep", "emit a CSV sweep along one parameter");
  sw->add_option("axis", axis, "t | A | l | n")->required();
  sw->add_option("--from", from)->required();
  sw->add_option("--to", to)->required();
  sw->add_option("--steps", steps)->required();
  sw->add_option("--out", sweep_out, "CSV path (default stdout)");
  sweep_opts.add_to(sw, false);

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

  try {
    if (verify->parsed()) {
      cuspforge::SuiteConfig cfg = verify_opts.resolve();
      cfg.suite = suite;
      const cuspforge::Report report = cuspforge::run_suite(cfg);
      std::ofstream file;
      *open_out(out, file) << report.to_json().dump(2) << '\n';
      std::size_t failed = 0;
      for (const auto& c : report.checks) failed += !c.passed;
      std::cerr << "verify " << suite << ": " << (report.passed ? "PASS" : "FAIL") << " ("
                << report.checks.size() - failed << '/' << report.checks.size() << " checks)\n";
      for (const auto& c : report.checks)
        if (!c.passed) std::cerr << "  FAIL " << c.suite << '/' << c.name << ": " << c.witness << '\n';
      return report.passed ? 0 : 1;
    }
    const cuspforge::SuiteConfig cfg = sweep_opts.resolve();
    std::ofstream file;
    cuspforge::sweep(cfg, axis, from, to, steps, *open_out(sweep_out, file));
    return 0;
  } catch (const cuspforge::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
