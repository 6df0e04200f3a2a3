// resolve: run a desingularization job and write tree/report files.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "resol/io.hpp"

namespace {

constexpr int kExitRejected = 3;

std::optional<unsigned> env_max_steps() {
  const char* v = std::getenv("RESOL_MAX_STEPS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n == 0 || n > 100000) throw std::invalid_argument("RESOL_MAX_STEPS must be a positive integer");
  return static_cast<unsigned>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong desingularization of affine schemes and mobiles over Q"};
  std::string input;
  std::string out_dir = "out";
  std::optional<std::string> mode, emit;
  std::optional<unsigned> control, max_steps;
  bool verify = false, trace = false;
  unsigned long seed = 0;
  unsigned jobs = 1;
  app.add_option("--input", input, "job file")->required()->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "mobile | scheme")->check(CLI::IsMember({"mobile", "scheme"}));
  app.add_option("--control", control, "control c of the mobile")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", max_steps, "blowup round budget")->check(CLI::PositiveNumber);
  app.add_option("--emit", emit, "json | dot | both")->check(CLI::IsMember({"json", "dot", "both"}));
  app.add_flag("--verify", verify, "verify the leaves after resolving");
  app.add_flag("--trace", trace, "write trace.json with the setups");
  app.add_option("--seed", seed, "recorded only; the algorithm is deterministic");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "worker threads for sibling charts")->check(CLI::Range(1u, 64u));
  CLI11_PARSE(app, argc, argv);

  resol::JobSpec spec;
  try {
    std::ifstream f(input, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    spec = resol::parse_job(buf.str());
    if (auto env = env_max_steps()) spec.max_steps = *env;
    if (max_steps) spec.max_steps = *max_steps;
    if (mode) spec.mode = resol::parse_mode(*mode);
    if (control) spec.control = *control;
    if (emit) spec.emit = resol::parse_emit(*emit);
    spec.verify = spec.verify || verify;
    spec.trace = spec.trace || trace;
    if (spec.mode == resol::Mode::Scheme && (spec.control != 1 || !spec.D.empty() || !spec.E.empty()))
      throw std::invalid_argument("scheme mode uses control 1 and empty handicaps");
  } catch (const resol::JobError& e) {
    std::cerr << input << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRejected;
  }

  resol::ResolveOptions options;
  options.max_steps = spec.max_steps;
  options.verify = spec.verify;
  options.trace = spec.trace;
  options.jobs = jobs;

  resol::Resolution run;
  try {
    run = resol::run_job(spec, options);
  } catch (const resol::InputRejected& e) {
    std::cerr << "input rejected: " << e.what() << "\n";
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    resol::emit_outputs(run, spec, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const auto& r = run.report;
  std::cout << "rounds " << r.rounds << ", charts " << run.tree.charts.size() << ", checks "
            << (r.all_checks_pass() ? "pass" : "FAIL") << (r.budget_exhausted ? ", budget exhausted" : "")
            << (r.irrational_candidates ? ", irrational candidates skipped" : "") << "\n";
  if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
  for (const auto& c : r.checks)
    if (!c.pass) std::cerr << "check " << c.name << " failed on chart " << c.chart << ": " << c.witness << "\n";
  return r.exit_code();
}
