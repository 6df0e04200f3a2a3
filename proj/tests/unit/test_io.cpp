#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "resol/io.hpp"

using namespace resol;

namespace {

JobError job_error(const std::string& text) {
  try {
    parse_job(text);
  } catch (const JobError& e) {
    return e;
  }
  FAIL("expected a job error for: " << text);
  return JobError(0, 0, "");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("parsing jobs") {
  JobSpec cusp = parse_job("vars: x y\nJ: y^2 - x^3\nmode: scheme");
  CHECK(cusp.variables == std::vector<std::string>{"x", "y"});
  CHECK(cusp.generators == std::vector<std::string>{"-x^3 + y^2"});
  CHECK(cusp.mode == Mode::Scheme);
  CHECK(cusp.control == 1);

  JobSpec umb = parse_job("vars: x y z\nJ: x^2 - y^2*z\nmode: scheme\n");
  CHECK(umb.variables.size() == 3);
  CHECK(job_ideal(umb).equals(Ideal::parse({"x^2 - y^2*z"}, make_vars({"x", "y", "z"}))));

  JobSpec comb = parse_job("vars: x y\nJ: x^2*y^3  # monomial\nmode: mobile\ncontrol: 4\nD: 2 1:x 2; 2 2:y 3\n");
  REQUIRE(comb.D.size() == 2);
  CHECK(comb.D[1] == HandicapSpec{2, 2, "y", 3});
  std::vector<ExceptionalComponent> comps;
  Mobile m = job_mobile(comb, comps);
  CHECK(m.c == 4);
  CHECK(m.D[1] == DList{{1, 2}, {2, 3}});
  REQUIRE(comps.size() == 2);
  CHECK(comps[1].equation.to_string() == "y");
}

TEST_CASE("job errors carry positions") {
  auto zero = job_error("vars: x y\ncontrol: 0\nJ: x\nmode: mobile\n");
  CHECK(zero.line() == 2);
  CHECK(zero.column() == 10);

  auto unknown_var = job_error("vars: x y\nJ: x + w\n");
  CHECK(unknown_var.line() == 2);
  CHECK(unknown_var.column() >= 4);

  auto unknown_key = job_error("vars: x\nJ: x\ncolour: red\n");
  CHECK(unknown_key.line() == 3);
  CHECK(unknown_key.column() == 1);

  CHECK(job_error("vars: x\nJ: x\nJ: x\n").line() == 3);
  CHECK(job_error("vars: x\nJ x\n").line() == 2);
  CHECK(job_error("vars: x y\nJ: x\nmode: scheme\nD: 2 1:x 2\n").line() == 4);
  CHECK(job_error("vars: x y\nJ: x\nmode: scheme\ncontrol: 2\n").line() == 4);
  CHECK(job_error("vars: x y\nJ: x\nmode: mobile\nD: 3 1:x 2\n").line() == 4);
  CHECK(job_error("vars: x y\nJ: x\nmode: mobile\nD: 2 1:x 2; 1 1:y 1\n").line() == 4);
  CHECK(job_error("vars: x y\nJ: x\nmode: mobile\nE: 2 1:x 2\n").line() == 4);
  CHECK(job_error("vars: x y\nJ: 0\n").line() == 2);
  CHECK(job_error("vars: x x\nJ: x\n").line() == 1);
  CHECK(job_error("J: x\n").line() == 2);
  CHECK(job_error("vars: x\nJ: x\nmax-steps: 0\n").line() == 3);
  CHECK(job_error("vars: x\nJ: x\nverify: maybe\n").line() == 3);
}

TEST_CASE("print then parse is the identity") {
  std::mt19937 rng(20240517);
  const std::vector<std::string> names{"x", "y", "z", "w"};
  for (int trial = 0; trial < 50; ++trial) {
    JobSpec spec;
    std::size_t n = 1 + rng() % 4;
    spec.variables.assign(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n));
    VarList v = make_vars(spec.variables);
    std::size_t gens = 1 + rng() % 3;
    for (std::size_t g = 0; g < gens; ++g) {
      Polynomial p(v);
      for (int t = 0; t < 3; ++t) {
        Monomial mono(n);
        for (std::size_t i = 0; i < n; ++i) mono[i] = rng() % 4;
        p += Polynomial::monomial(v, mono, Rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 4));
      }
      if (!p.is_zero()) spec.generators.push_back(p.to_string());
    }
    if (spec.generators.empty()) spec.generators.push_back(spec.variables[0]);
    if (rng() % 2) {
      spec.mode = Mode::Mobile;
      spec.control = 1 + rng() % 5;
      if (rng() % 2) spec.D.push_back({static_cast<unsigned>(n), 1, spec.variables[0], 1 + static_cast<unsigned>(rng() % 3)});
      if (rng() % 2) spec.E.push_back({1, 2, spec.variables[n - 1], 1});
    }
    spec.max_steps = 1 + rng() % 100;
    spec.emit = static_cast<Emit>(rng() % 3);
    spec.verify = rng() % 2;
    spec.trace = rng() % 2;
    INFO(print_job(spec));
    CHECK(parse_job(print_job(spec)) == spec);
  }
}

TEST_CASE("emitted files") {
  JobSpec spec = parse_job("vars: x y\nJ: y^2 - x^3\nmode: scheme\nemit: both\ntrace: yes\n");
  ResolveOptions opt;
  Resolution run = run_job(spec, opt);

  Json tree = tree_json(run.tree, spec.mode);
  CHECK(tree["charts"][0]["parent"].is_null());
  CHECK(tree["charts"].size() == run.tree.charts.size());
  for (const auto& c : tree["charts"]) {
    if (c["parent"] == "0") {
      bool has_first = false;
      for (const auto& e : c["exceptional"]) has_first = has_first || e["label"] == 1;
      CHECK(has_first);
    }
  }
  CHECK(tree["charts"][0]["invariant"] == Json::array({2, 2, 0, 0, 3, 3, 0, 0}));

  auto dir = std::filesystem::temp_directory_path() / "resol_emit_test";
  std::filesystem::remove_all(dir);
  emit_outputs(run, spec, dir);
  for (const char* f : {"tree.json", "tree.dot", "report.json", "trace.json"}) CHECK(std::filesystem::exists(dir / f));
  std::string first = slurp(dir / "tree.json") + slurp(dir / "report.json");
  emit_outputs(run_job(spec, opt), spec, dir);
  CHECK(first == slurp(dir / "tree.json") + slurp(dir / "report.json"));

  Json report = Json::parse(slurp(dir / "report.json"));
  CHECK(report["exitCode"] == 0);
  CHECK(report["rounds"] == run.report.rounds);

  Json trace = Json::parse(slurp(dir / "trace.json"));
  CHECK(trace[0]["levels"][0]["o"] == 2);
  CHECK(trace[0]["levels"][1]["control"] == 2);
  CHECK(trace[0]["levels"][0]["flag"].is_string());
  std::filesystem::remove_all(dir);
}

TEST_CASE("smooth input emits a single node") {
  JobSpec spec = parse_job("vars: x y\nJ: y - x^2\nmode: scheme\n");
  Resolution run = run_job(spec, ResolveOptions{});
  Json tree = tree_json(run.tree, spec.mode);
  CHECK(tree["charts"].size() == 1);
  CHECK(tree["edges"].empty());
  std::string dot = tree_dot(run.tree);
  CHECK(dot.rfind("digraph charts {", 0) == 0);
  CHECK(dot.find("->") == std::string::npos);
  CHECK(dot.find("resolved") != std::string::npos);
}

TEST_CASE("dot output of a branching tree") {
  JobSpec spec = parse_job("vars: x y\nJ: y^2 - x^3\n");
  Resolution run = run_job(spec, ResolveOptions{});
  std::string dot = tree_dot(run.tree);
  std::size_t edges = 0, pos = 0;
  while ((pos = dot.find("->", pos)) != std::string::npos) ++edges, ++pos;
  CHECK(edges == run.tree.charts.size() - 1);
  CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
  CHECK(dot.find("(2,2,0,0,3,3,0,0)") != std::string::npos);
}
