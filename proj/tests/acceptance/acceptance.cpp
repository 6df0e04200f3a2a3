// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "properties.hpp"
#include "resol/io.hpp"

using namespace resol;
using namespace testing_support;

namespace {

// Blowup rounds of the cusp, fixed by the first recorded run.
constexpr unsigned kCuspRounds = 3;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool clean(const Resolution& r) {
  return r.report.error.empty() && !r.report.budget_exhausted && r.report.all_checks_pass() &&
         r.report.exit_code() == 0;
}

std::string failing_checks(const Resolution& r) {
  std::string out;
  for (const auto& c : r.report.checks)
    if (!c.pass) out += " " + c.name + "@" + c.chart;
  if (!r.report.error.empty()) out += " error: " + r.report.error;
  return out;
}

Ideal origin(const VarList& v) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < v->size(); ++i) gens.push_back(Polynomial::variable(v, i));
  return Ideal(v, gens);
}

const Chart* child_with_new_component(const ChartTree& tree, const std::string& parent, const Polynomial& eq) {
  for (const auto& c : tree.charts)
    if (c.parent == parent && !c.exceptional.empty() && c.exceptional.back().equation == eq) return &c;
  return nullptr;
}

Mobile plain_mobile(const std::string& f, unsigned c, const VarList& v) {
  Mobile m;
  m.J = ideal({f}, v);
  m.c = c;
  m.D.assign(v->size(), {});
  m.E.assign(v->size(), {});
  return m;
}

// Every blown-up chart's invariant lies strictly below its parent's.
void check_edges_decrease(const ChartTree& tree, Outcome& out, const std::string& name) {
  for (const auto& c : tree.charts) {
    if (c.parent.empty() || !c.invariant) continue;
    const Chart* p = tree.find(c.parent);
    bool ok = p && p->invariant && *c.invariant < *p->invariant;
    out.require(ok, name + ": no decrease on edge " + c.parent + " -> " + c.id);
  }
}

// ---------------------------------------------------------------- criteria

Outcome cusp() {
  Outcome out;
  auto v = vars({"x", "y"});
  auto t0 = std::chrono::steady_clock::now();
  Resolution r = resolve_scheme(ideal({"y^2 - x^3"}, v), ResolveOptions{});
  double t = seconds_since(t0);
  out.require(clean(r), "run not clean:" + failing_checks(r));
  out.require(t < 10.0, "runtime " + std::to_string(t) + " s");
  out.require(!r.report.steps.empty(), "no blowups recorded");
  if (r.report.steps.empty()) return out;
  out.require(r.report.steps[0].invariant.flatten() == std::vector<std::uint64_t>{2, 2, 0, 0, 3, 3, 0, 0},
              "first invariant " + r.report.steps[0].invariant.to_string());
  out.require(Ideal::parse(r.report.steps[0].center, v).equals(origin(v)), "first center is not the origin");

  const Chart* xc = child_with_new_component(r.tree, "0", Polynomial::variable(v, 0));
  out.require(xc != nullptr, "no x-chart under the root");
  if (xc == nullptr) return out;
  // Weak transform by hand: (xy)^2 - x^3 = x^2 (y^2 - x).
  Polynomial f = poly("y^2 - x^3", v);
  Polynomial pulled = f.compose(std::vector<Polynomial>{poly("x", v), poly("x*y", v)});
  out.require(xc->edge.apply(f) == pulled, "x-chart map is not y -> x*y");
  Polynomial weak = pulled.exact_divide(poly("x^2", v));
  out.require(weak == poly("y^2 - x", v), "hand weak transform");
  Setup s = build_setup(xc->mobile, xc->exceptional);
  out.require(s.levels[0].I.equals(Ideal(v, {weak})), "I'_2 = " + s.levels[0].I.to_string());
  const unsigned y_label = xc->exceptional.back().label;
  out.require(xc->mobile.D[1] == DList{{y_label, 1}}, "D'_2 is not 1*Y'");
  out.require(xc->mobile.D[0] == DList{{y_label, 1}}, "D'_1 is not 1*Y'");

  out.require(r.report.rounds == kCuspRounds, "round count " + std::to_string(r.report.rounds));
  Resolution again = resolve_scheme(ideal({"y^2 - x^3"}, v), ResolveOptions{});
  out.require(again.report.rounds == r.report.rounds, "round count differs between runs");
  out.notes.push_back("rounds " + std::to_string(r.report.rounds) + ", " + std::to_string(t) + " s");
  return out;
}

Outcome umbrella() {
  Outcome out;
  auto v = vars({"x", "y", "z"});
  // Level-2 ideal y^2 z: order 3 at the origin, 2 at generic points of the z-axis.
  auto w = vars({"y", "z"});
  out.require(order_by_derivatives(poly("y^2*z", w), {0, 0}) == 3, "order of y^2 z at 0");
  out.require(order_by_derivatives(poly("y^2*z", w), {0, Rational(5, 7)}) == 2, "order of y^2 z on the axis");

  auto t0 = std::chrono::steady_clock::now();
  Resolution r = resolve_scheme(ideal({"x^2 - y^2*z"}, v), ResolveOptions{});
  double t = seconds_since(t0);
  out.require(clean(r), "run not clean:" + failing_checks(r));
  out.require(t < 60.0, "runtime " + std::to_string(t) + " s");
  if (r.report.steps.empty()) {
    out.require(false, "no blowups recorded");
    return out;
  }
  out.require(Ideal::parse(r.report.steps[0].center, v).equals(origin(v)), "first center is not the origin");
  auto inv = r.report.steps[0].invariant.flatten();
  out.require(std::vector<std::uint64_t>(inv.begin(), inv.begin() + 8) ==
                  std::vector<std::uint64_t>{2, 2, 0, 0, 3, 3, 0, 0},
              "first invariant " + r.report.steps[0].invariant.to_string());
  out.notes.push_back("rounds " + std::to_string(r.report.rounds) + ", " + std::to_string(t) + " s");
  return out;
}

Outcome a_n() {
  Outcome out;
  auto v = vars({"x", "y"});
  std::string rounds;
  for (unsigned n = 1; n <= 4; ++n) {
    std::string f = "y^2 - x^" + std::to_string(n + 1);
    auto t0 = std::chrono::steady_clock::now();
    Resolution r = resolve_scheme(ideal({f}, v), ResolveOptions{});
    double t = seconds_since(t0);
    const std::string name = "A" + std::to_string(n);
    out.require(clean(r), name + " run not clean:" + failing_checks(r));
    out.require(t < 60.0, name + " runtime " + std::to_string(t) + " s");
    check_edges_decrease(r.tree, out, name);
    for (const auto& c : r.report.checks)
      if (c.name == "invariant-decrease") out.require(c.pass, name + ": " + c.witness);
    rounds += " " + name + "=" + std::to_string(r.report.rounds);
  }
  out.notes.push_back("rounds" + rounds);
  return out;
}

Outcome bold_regular() {
  Outcome out;
  auto v = vars({"x", "y"});
  ResolveOptions opt;
  opt.mode = Mode::Mobile;
  Resolution r = resolve_mobile(plain_mobile("(x+y)^2", 2, v), {}, opt);
  out.require(clean(r), "mobile run not clean:" + failing_checks(r));
  out.require(r.report.rounds == 1 && r.report.steps.size() == 1, "not a single step");
  if (!r.report.steps.empty())
    out.require(Ideal::parse(r.report.steps[0].center, v).equals(ideal({"x + y"}, v)), "center is not V(x+y)");
  const Chart& root = r.tree.charts.front();
  out.require(root.setup && root.setup->stop == StopKind::BoldRegular && root.setup->stop_level == 2,
              "root setup does not stop bold regular at the top");
  // Zero coefficient ideal: after u = x + y the ideal is (u^2), with nothing below u^2.
  auto uy = vars({"u", "y"});
  out.require(coefficient_ideal(ideal({"u^2"}, uy), 2, 0).is_zero(), "coefficient ideal of u^2 is not zero");
  for (const Chart* leaf : r.tree.leaves()) out.require(leaf->mobile.J.is_trivial(), "leaf " + leaf->id + " J != (1)");

  Resolution line = resolve_scheme(ideal({"x"}, v), ResolveOptions{});
  out.require(clean(line), "scheme (x) not clean:" + failing_checks(line));
  out.require(line.report.rounds == 0 && line.tree.charts.size() == 1, "scheme (x) needed blowups");
  return out;
}

Outcome combinatorial() {
  Outcome out;
  auto v = vars({"x", "y"});
  Mobile m = plain_mobile("x^2*y^3", 4, v);
  m.D[1] = {{1, 2}, {2, 3}};
  std::vector<ExceptionalComponent> comps{{1, poly("x", v), 0}, {2, poly("y", v), 0}};
  // Shortcut oracle: {1} has order 2 < 4, {2} has 3 < 4, {1,2} has 5 and is tight.
  out.require(2 < 4 && 3 < 4 && 2 + 3 >= 4, "shortcut arithmetic");
  ResolveOptions opt;
  opt.mode = Mode::Mobile;
  Resolution r = resolve_mobile(m, comps, opt);
  out.require(clean(r), "run not clean:" + failing_checks(r));
  if (r.report.steps.empty()) {
    out.require(false, "no blowups recorded");
    return out;
  }
  const Tag first = r.report.steps[0].invariant.tags[0];
  out.require(first == Tag{0, 0, 5, shortcut_label({1, 2})}, "first tag " + first.to_string());
  const Chart& root = r.tree.charts.front();
  out.require(root.setup && root.setup->stop == StopKind::Combinatorial, "root is not a combinatorial stop");
  for (const auto& c : r.tree.charts) {
    if (c.parent != "0") continue;
    if (c.invariant) {
      out.require(c.invariant->tags[0] < first, "m-tag of " + c.id + " is " + c.invariant->tags[0].to_string());
    } else {
      out.require(c.status == ChartStatus::Resolved, "chart " + c.id + " neither resolved nor evaluated");
    }
  }
  check_edges_decrease(r.tree, out, "combinatorial");
  return out;
}

// (coeff_V K)^! = coeff_{V'}(K^v) in every chart of the first blowup that contains V'.
void check_commutation(const std::string& f, const VarList& v, Outcome& out) {
  Resolution r = resolve_scheme(ideal({f}, v), ResolveOptions{});
  const Chart& root = r.tree.charts.front();
  if (!root.setup) {
    out.require(false, f + ": root has no setup");
    return;
  }
  const SetupLevel& top = root.setup->levels.front();
  Ideal K = top.K;
  const unsigned k = top.k;
  const Polynomial& flag = *top.flag_in_chart;
  std::size_t z = v->size();
  for (std::size_t i = 0; i < v->size(); ++i)
    if (flag.monic() == Polynomial::variable(v, i)) z = i;
  out.require(z < v->size(), f + ": flag " + flag.to_string() + " is not a coordinate");
  if (z == v->size()) return;
  out.require(Ideal::parse(r.report.steps[0].center, v).equals(origin(v)), f + ": first center is not a point");

  Ideal coeff_v = coefficient_ideal(K, k, z);
  const VarList& vv = coeff_v.vars();
  std::vector<std::size_t> all, all_v;
  for (std::size_t i = 0; i < v->size(); ++i) all.push_back(i);
  for (std::size_t i = 0; i < vv->size(); ++i) all_v.push_back(i);
  const unsigned kf = static_cast<unsigned>(factorial(k));
  int charts = 0;
  for (std::size_t p = 0; p < v->size(); ++p) {
    if (p == z) continue;
    auto map = blowup_map(v, all, p);
    Ideal K_check = transform_ideal(K, TransformKind::Controlled, map, p, k);
    Ideal rhs = coefficient_ideal(K_check, k, z);
    const std::size_t pv = p < z ? p : p - 1;
    auto map_v = blowup_map(vv, all_v, pv);
    Ideal lhs = transform_ideal(coeff_v, TransformKind::Controlled, map_v, pv, kf);
    out.require(lhs.equals(rhs.with_vars(vv)),
                f + ", pivot " + (*v)[p] + ": " + lhs.to_string() + " vs " + rhs.to_string());
    // At the new origin both sides have the same order.
    out.require(lhs.order_at(Point(vv->size(), 0)) == rhs.order_at(Point(vv->size(), 0)), f + ": orders at origin");
    ++charts;
  }
  out.notes.push_back(f + ": " + std::to_string(charts) + " charts");
}

Outcome commutation() {
  Outcome out;
  check_commutation("y^2 - x^3", vars({"x", "y"}), out);
  check_commutation("x^2 - y^2*z", vars({"x", "y", "z"}), out);
  return out;
}

Outcome flag_independence() {
  Outcome out;
  int compared = 0, different_flags = 0;
  for (auto [f, names] : {std::pair<std::string, std::vector<std::string>>{"y^2 - x^3", {"x", "y"}},
                          {"x^2 - y^2*z", {"x", "y", "z"}}}) {
    auto v = vars(names);
    Resolution first = resolve_scheme(ideal({f}, v), ResolveOptions{});
    ResolveOptions last_opt;
    last_opt.policy = OsculatingPolicy::Last;
    Resolution last = resolve_scheme(ideal({f}, v), last_opt);
    for (const auto& c : first.tree.charts) {
      if (!c.invariant) continue;
      CenterSearch alt = locate_center(c, OsculatingPolicy::Last);
      out.require(alt.setup.invariant == *c.invariant, f + ", chart " + c.id + ": " + alt.setup.invariant.to_string() +
                                                           " vs " + c.invariant->to_string());
      for (std::size_t i = 0; i < c.setup->levels.size() && i < alt.setup.levels.size(); ++i) {
        const auto& a = c.setup->levels[i].flag_in_chart;
        const auto& b = alt.setup.levels[i].flag_in_chart;
        if (a && b && !(*a == *b)) ++different_flags;
      }
      ++compared;
    }
    out.require(first.report.steps.size() == last.report.steps.size(), f + ": step counts differ");
    for (std::size_t i = 0; i < first.report.steps.size() && i < last.report.steps.size(); ++i)
      out.require(first.report.steps[i].invariant == last.report.steps[i].invariant, f + ": step invariants differ");
  }
  out.notes.push_back(std::to_string(compared) + " charts, " + std::to_string(different_flags) + " with other flags");
  return out;
}

Outcome kernel_properties(unsigned seed) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  auto a = order_rules(seed, 100);
  auto b = delta_generator_independence(seed + 1, 20);
  auto c = delta_locus_pointwise(seed + 2, 20);
  double t = seconds_since(t0);
  out.require(a.ok(), "order rules: " + a.first_failure);
  out.require(b.ok(), "delta independence: " + b.first_failure);
  out.require(c.ok(), "delta locus: " + c.first_failure);
  out.require(t < 120.0, "runtime " + std::to_string(t) + " s");
  out.notes.push_back(std::to_string(a.cases + b.cases + c.cases) + " cases, seed " + std::to_string(seed));
  return out;
}

// Sequence of new-component equations from the root, with variables renamed.
std::string pivot_key(const ChartTree& tree, const Chart& c, const std::function<std::string(const Polynomial&)>& show) {
  std::string key;
  for (const Chart* cur = &c; !cur->parent.empty(); cur = tree.find(cur->parent))
    key = show(cur->exceptional.back().equation) + "/" + key;
  return key;
}

Outcome equivariance() {
  Outcome out;
  auto v = vars({"x", "y"});
  Resolution a = resolve_scheme(ideal({"y^2 - x^3"}, v), ResolveOptions{});
  Resolution b = resolve_scheme(ideal({"x^2 - y^3"}, v), ResolveOptions{});
  auto swap_name = [](const std::string& n) { return n == "x" ? std::string("y") : n == "y" ? std::string("x") : n; };
  // Rewrites a polynomial of chart A into the variables of chart B, swapping x and y.
  auto rename = [&](const Polynomial& p, const VarList& target) {
    std::vector<Polynomial> images;
    for (const auto& n : *p.vars()) images.push_back(Polynomial::variable(target, swap_name(n)));
    return p.compose(images);
  };
  auto rename_ideal = [&](const Ideal& I, const VarList& target) {
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(rename(g, target));
    return Ideal(target, gens);
  };

  std::map<std::string, const Chart*> by_key;
  for (const auto& c : b.tree.charts)
    by_key[pivot_key(b.tree, c, [](const Polynomial& p) { return p.to_string(); })] = &c;
  out.require(a.tree.charts.size() == b.tree.charts.size(), "chart counts differ");
  out.require(a.report.rounds == b.report.rounds, "round counts differ");
  for (const auto& ca : a.tree.charts) {
    std::string key = pivot_key(a.tree, ca, [&](const Polynomial& p) { return rename(p, p.vars()).to_string(); });
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      out.require(false, "no image for chart " + ca.id);
      continue;
    }
    const Chart& cb = *it->second;
    const VarList& tv = cb.vars;
    out.require(ca.status == cb.status, ca.id + ": status");
    out.require(ca.invariant == cb.invariant, ca.id + ": invariant");
    out.require(rename_ideal(ca.mobile.J, tv).equals(cb.mobile.J), ca.id + ": mobile ideal");
    out.require(ca.strict.has_value() == cb.strict.has_value() &&
                    (!ca.strict || rename_ideal(*ca.strict, tv).equals(*cb.strict)),
                ca.id + ": strict transform");
    out.require(ca.exceptional.size() == cb.exceptional.size(), ca.id + ": exceptional count");
    for (std::size_t i = 0; i < ca.exceptional.size() && i < cb.exceptional.size(); ++i) {
      out.require(ca.exceptional[i].label == cb.exceptional[i].label, ca.id + ": labels");
      out.require(rename(ca.exceptional[i].equation, tv) == cb.exceptional[i].equation, ca.id + ": equations");
    }
    out.require(Ideal(tv, [&] {
                  std::vector<Polynomial> g;
                  for (const auto& p : ca.center) g.push_back(rename(p, tv));
                  return g;
                }()).equals(Ideal(tv, cb.center)),
                ca.id + ": center");
    for (std::size_t i = 0; i < ca.path.images().size(); ++i) {
      const std::string src = swap_name((*ca.path.source())[i]);
      std::size_t j = 0;
      while (j < cb.path.source()->size() && (*cb.path.source())[j] != src) ++j;
      out.require(j < cb.path.source()->size() && rename(ca.path.images()[i], tv) == cb.path.images()[j],
                  ca.id + ": path image of " + (*ca.path.source())[i]);
    }
    for (std::size_t l = 0; l < ca.mobile.D.size(); ++l)
      out.require(ca.mobile.D[l] == cb.mobile.D[l], ca.id + ": handicaps");
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism(const std::filesystem::path& corpus) {
  Outcome out;
  std::vector<std::filesystem::path> jobs;
  for (const auto& e : std::filesystem::directory_iterator(corpus))
    if (e.path().extension() == ".job") jobs.push_back(e.path());
  std::sort(jobs.begin(), jobs.end());
  out.require(!jobs.empty(), "empty corpus at " + corpus.string());
  const auto base = std::filesystem::temp_directory_path() / "resol_determinism";
  std::filesystem::remove_all(base);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& job : jobs) {
      JobSpec spec = parse_job(slurp(job));
      ResolveOptions opt;
      opt.max_steps = spec.max_steps;
      opt.verify = true;
      opt.jobs = pass == 0 ? 1 : 4;
      emit_outputs(run_job(spec, opt), spec, base / std::to_string(pass) / job.stem());
    }
  }
  for (const auto& job : jobs)
    for (const char* f : {"tree.json", "report.json"}) {
      auto a = slurp(base / "0" / job.stem() / f), b = slurp(base / "1" / job.stem() / f);
      out.require(!a.empty() && a == b, job.stem().string() + "/" + f + " differs");
    }
  std::filesystem::remove_all(base);
  out.notes.push_back(std::to_string(jobs.size()) + " jobs");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path corpus = argc > 1 ? argv[1] : RESOL_CORPUS_DIR;
  unsigned seed = 7;
  if (const char* s = std::getenv("RESOL_SEED")) seed = static_cast<unsigned>(std::strtoul(s, nullptr, 10));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cusp, scheme mode", cusp},
      {"Whitney umbrella, scheme mode", umbrella},
      {"A_n family, n = 1..4", a_n},
      {"bold-regular paths", bold_regular},
      {"combinatorial branch", combinatorial},
      {"coefficient-ideal commutation", commutation},
      {"flag independence", flag_independence},
      {"kernel properties", [seed] { return kernel_properties(seed); }},
      {"equivariance under x <-> y", equivariance},
      {"determinism of corpus runs", [corpus] { return determinism(corpus); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first;
    for (const auto& n : o.notes) std::cout << " | " << n;
    std::cout << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
