#include "resol/resolver.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace resol {

bool ResolutionReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

int ResolutionReport::exit_code() const {
  if (budget_exhausted) return 2;
  if (!error.empty() || !all_checks_pass()) return 1;
  return 0;
}

namespace {

// Sample values for independent variables of positive-dimensional loci.
const Rational& generic_value(std::size_t i) {
  static const std::vector<Rational> values = {Rational(3, 7),   Rational(5, 11),  Rational(7, 13),
                                               Rational(11, 17), Rational(13, 19), Rational(17, 23),
                                               Rational(19, 29), Rational(23, 31), Rational(1),
                                               Rational(2),      Rational(-1),     Rational(4)};
  return values[i % values.size()];
}

constexpr std::size_t kSampleAttempts = 3;

Polynomial handicap_monomial(const DList& d, const std::vector<ExceptionalComponent>& comps, const VarList& vars) {
  Polynomial m = Polynomial::constant(vars, 1);
  for (const auto& e : d) {
    const ExceptionalComponent* comp = find_component(comps, e.label);
    if (comp == nullptr) throw AlgorithmError("handicap label " + std::to_string(e.label) + " has no component");
    m = m * comp->equation.pow(e.mult);
  }
  return m;
}

// Largest b >= 1 with base + Delta^{b-1}(I) non-trivial (0 if none), and that locus.
std::pair<unsigned, Ideal> top_order(const Ideal& base, const Ideal& I) {
  unsigned best = 0;
  Ideal locus = base;
  Ideal d = I.reduced();
  for (unsigned b = 1;; ++b) {
    if (d.is_trivial()) break;
    Ideal candidate = (base + d).reduced();
    if (candidate.is_trivial()) break;
    best = b;
    locus = candidate;
    d = d.delta().reduced();
  }
  return {best, locus};
}

void add_points(const Ideal& S, std::set<Point>& points, bool& irrational) {
  if (S.is_trivial()) return;
  const std::size_t n = S.nvars();
  auto collect = [&](const Ideal& zero_dim) {
    Ideal::Points pts = zero_dim.rational_points();
    bool added = false;
    for (auto& p : pts.points)
      if (p.size() == n) added = points.insert(std::move(p)).second || added;
    return std::pair{added, pts.irrational};
  };
  auto sets = S.independent_sets();
  if (sets.empty() || sets.front().empty()) {
    auto [added, irr] = collect(S);
    irrational = irrational || irr;
    return;
  }
  // Slice by generic values; other independent sets and values are tried when a slice has no rational point.
  bool missed = false;
  for (std::size_t attempt = 0; attempt < kSampleAttempts; ++attempt) {
    for (const auto& indep : sets) {
      std::vector<Polynomial> gens;
      for (std::size_t j = 0; j < indep.size(); ++j)
        gens.push_back(Polynomial::variable(S.vars(), indep[j]) -
                       Polynomial::constant(S.vars(), generic_value(j + attempt * indep.size())));
      Ideal zero_dim = S + Ideal(S.vars(), gens);
      if (zero_dim.is_trivial() || zero_dim.dimension() != 0) continue;
      auto [added, irr] = collect(zero_dim);
      if (added) return;
      missed = missed || irr;
    }
  }
  irrational = irrational || missed;
}

Mobile translate_mobile(const Mobile& m, const Point& a) {
  Mobile t = m;
  t.J = m.J.translate(a);
  return t;
}

std::vector<ExceptionalComponent> translate_components(const std::vector<ExceptionalComponent>& comps, const Point& a) {
  std::vector<ExceptionalComponent> out = comps;
  for (auto& c : out) c.equation = c.equation.translate(a);
  return out;
}

}  // namespace

CenterSearch locate_center(const Chart& chart, OsculatingPolicy policy) {
  CenterSearch out;
  const Mobile& m = chart.mobile;
  const std::size_t n = m.dim();
  const VarList& vars = chart.vars;
  Ideal L = m.J.delta_power(m.c - 1);
  if (L.is_trivial()) {
    out.resolved = true;
    return out;
  }

  // Top level of the descent, evaluated globally on the chart.
  DList dn = n > 0 && !m.D.empty() ? m.D[n - 1] : DList{};
  Polynomial M = handicap_monomial(dn, chart.exceptional, vars);
  std::vector<Polynomial> quotients;
  for (const auto& g : m.J.generators()) {
    auto q = g.try_divide(M);
    if (!q) throw AlgorithmError("mobile ideal not divisible by its handicap monomial");
    quotients.push_back(std::move(*q));
  }
  Ideal I(vars, std::move(quotients));
  auto [o_max, S_o] = top_order(L, I);
  Ideal S2 = L;
  if (o_max > 0) {
    bool on = !m.reference || (n - 1 < m.reference->parent_o.size() && o_max == m.reference->parent_o[n - 1]);
    EList e = on ? (m.E.empty() ? EList{} : m.E[n - 1]) : m.all_e;
    Polynomial q = Polynomial::constant(vars, 1);
    for (unsigned lab : e) {
      const ExceptionalComponent* comp = find_component(chart.exceptional, lab);
      if (comp == nullptr) throw AlgorithmError("transversal label without component");
      q = q * comp->equation;
    }
    Ideal P = companion_ideal(I, M, o_max, m.c);
    Ideal K = composition_ideal(P, Ideal(vars, {q}), I);
    S2 = top_order(S_o, K).second;
  }

  // Candidate points of the top locus.
  std::vector<Polynomial> pool;
  for (std::size_t i = 0; i < n; ++i) pool.push_back(Polynomial::variable(vars, i));
  for (const auto& comp : chart.exceptional) pool.push_back(comp.equation);
  std::set<Point> points;
  for (std::size_t size = 0; size <= std::min(n, pool.size()); ++size) {
    for (const auto& subset : subsets(pool.size(), size)) {
      std::vector<Polynomial> gens;
      for (std::size_t i : subset) gens.push_back(pool[i]);
      add_points(S2 + Ideal(vars, gens), points, out.irrational);
    }
  }
  out.candidates = points.size();
  if (points.empty())
    throw NoRationalCenter("the top locus " + S2.reduced().to_string() + " has no rational candidate points");

  std::optional<Setup> best;
  Point best_point;
  for (const Point& a : points) {
    Setup s = build_setup(translate_mobile(m, a), translate_components(chart.exceptional, a), policy);
    if (!best || s.invariant > best->invariant) {
      best = std::move(s);
      best_point = a;
    }
  }
  if (o_max > 0 && best->levels.front().o != o_max)
    throw AlgorithmError("chart " + chart.id + ": order at the chosen point disagrees with the top locus");

  Point back(best_point.size());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = -best_point[i];
  for (const auto& g : best->center) out.center.push_back(g.translate(back));
  out.setup = std::move(*best);
  out.point = best_point;
  return out;
}

namespace {

struct Evaluation {
  bool verified = false;  // scheme mode early stop
  std::vector<Check> checks;
  std::optional<CenterSearch> search;
  std::string error;
  bool rejected = false;
};

Evaluation evaluate_chart(const Chart& chart, Mode mode, unsigned codim, OsculatingPolicy policy) {
  Evaluation ev;
  try {
    if (mode == Mode::Scheme) {
      ev.checks = verify_chart(chart, mode, codim);
      if (std::all_of(ev.checks.begin(), ev.checks.end(), [](const Check& c) { return c.pass; })) {
        ev.verified = true;
        return ev;
      }
    }
    ev.search = locate_center(chart, policy);
  } catch (const NoRationalCenter& e) {
    ev.error = "chart " + chart.id + ": " + e.what();
    ev.rejected = true;
  } catch (const std::exception& e) {
    ev.error = "chart " + chart.id + ": " + e.what();
  }
  return ev;
}

// J' = M'.I' with I' the weak transform of the top-level I and M' the D'_n monomial.
Check multiplicativity(const Ideal& I, unsigned o, const Chart& child) {
  Check out{"multiplicativity", child.id, true, ""};
  const Polynomial y = child.exceptional.back().equation;
  const Polynomial yo = y.pow(o);
  std::vector<Polynomial> weak;
  for (const auto& g : I.generators()) {
    auto q = child.edge.apply(g).try_divide(yo);
    if (!q) {
      out.pass = false;
      out.witness = "weak transform of " + g.to_string() + " not divisible by " + yo.to_string();
      return out;
    }
    weak.push_back(std::move(*q));
  }
  Polynomial M = Polynomial::constant(child.vars, 1);
  const std::size_t n = child.vars->size();
  for (const auto& e : child.mobile.D[n - 1]) {
    const ExceptionalComponent* comp = find_component(child.exceptional, e.label);
    if (comp == nullptr) {
      out.pass = false;
      out.witness = "label " + std::to_string(e.label) + " without component";
      return out;
    }
    M = M * comp->equation.pow(e.mult);
  }
  Ideal expected = Ideal(child.vars, {M}) * Ideal(child.vars, std::move(weak));
  if (!child.mobile.J.equals(expected)) {
    out.pass = false;
    out.witness = child.mobile.J.to_string() + " != " + expected.to_string();
  }
  return out;
}

unsigned max_label(const std::vector<ExceptionalComponent>& comps) {
  unsigned m = 0;
  for (const auto& c : comps) m = std::max(m, c.label);
  return m;
}

Resolution run(Chart root, Mode mode, unsigned codim, const ResolveOptions& options) {
  Resolution res;
  res.tree.charts.push_back(std::move(root));
  // Components are labelled by the round that creates them, unique along every path.
  const unsigned first_label = max_label(res.tree.charts.front().exceptional) + 1;
  std::vector<std::size_t> active{0};
  unsigned round = 0;

  while (!active.empty()) {
    std::vector<Evaluation> evals(active.size());
    if (options.jobs > 1 && active.size() > 1) {
      std::vector<std::future<Evaluation>> futures;
      for (std::size_t idx : active)
        futures.push_back(std::async(std::launch::async, evaluate_chart, std::cref(res.tree.charts[idx]), mode, codim,
                                     options.policy));
      for (std::size_t i = 0; i < futures.size(); ++i) evals[i] = futures[i].get();
    } else {
      for (std::size_t i = 0; i < active.size(); ++i)
        evals[i] = evaluate_chart(res.tree.charts[active[i]], mode, codim, options.policy);
    }

    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const std::size_t idx = active[i];
      Evaluation& ev = evals[i];
      if (ev.rejected) throw InputRejected(ev.error);
      if (!ev.error.empty()) {
        res.tree.charts[idx].status = ChartStatus::Failed;
        if (res.report.error.empty()) res.report.error = ev.error;
        continue;
      }
      if (ev.verified || ev.search->resolved) {
        res.tree.charts[idx].status = ChartStatus::Resolved;
        continue;
      }
      if (round >= options.max_steps) {
        res.report.budget_exhausted = true;
        continue;
      }
      CenterSearch& found = *ev.search;
      res.report.irrational_candidates = res.report.irrational_candidates || found.irrational;
      Chart& chart = res.tree.charts[idx];
      chart.invariant = found.setup.invariant;
      chart.center = found.center;

      if (!chart.parent.empty()) {
        const Chart* parent = res.tree.find(chart.parent);
        bool decreased = parent->invariant && chart.invariant < *parent->invariant;
        res.report.checks.push_back({"invariant-decrease", chart.id, decreased,
                                     decreased ? "" : chart.invariant->to_string() + " not below parent " +
                                                          (parent->invariant ? parent->invariant->to_string() : "")});
      }
      {
        Ideal C(chart.vars, chart.center);
        Ideal top = chart.mobile.J.delta_power(chart.mobile.c - 1);
        bool inside = std::all_of(top.generators().begin(), top.generators().end(),
                                  [&](const Polynomial& g) { return C.radical_contains(g); });
        res.report.checks.push_back({"center-in-top-locus", chart.id, inside, inside ? "" : C.to_string()});
        Check tr = center_transversality(chart.center, chart.exceptional, chart.vars);
        tr.chart = chart.id;
        res.report.checks.push_back(tr);
      }

      std::vector<Chart> children;
      try {
        if (chart.center.size() == 1) {
          children.push_back(blowup_hypersurface(chart, chart.center.front(), found.setup, first_label + round, round + 1));
        } else {
          CenterCoordinates cc = coordinatize_center(chart.vars, chart.center);
          Chart work = change_coordinates(chart, cc.change);
          work.center_change = cc.change;
          children = blowup_chart(work, cc.Z, found.setup, first_label + round, round + 1);
          chart.center_change = cc.change;
          for (std::size_t z : cc.Z) chart.center_vars.push_back((*cc.change.target())[z]);
        }
      } catch (const std::exception& e) {
        chart.status = ChartStatus::Failed;
        if (res.report.error.empty()) res.report.error = "chart " + chart.id + ": " + e.what();
        continue;
      }
      {
        Point back(found.point.size());
        for (std::size_t i = 0; i < back.size(); ++i) back[i] = -found.point[i];
        const SetupLevel& top = found.setup.levels.front();
        Ideal I = top.I.translate(back);
        for (const auto& child : children) res.report.checks.push_back(multiplicativity(I, top.o, child));
      }
      chart.setup = std::move(found.setup);
      chart.status = ChartStatus::BlownUp;

      StepRecord rec;
      rec.step = round + 1;
      rec.chart = chart.id;
      rec.invariant = *chart.invariant;
      for (const auto& g : chart.center) rec.center.push_back(g.to_string());
      rec.chart_count = children.size();
      res.report.steps.push_back(std::move(rec));

      for (auto& child : children) {
        next.push_back(res.tree.charts.size());
        res.tree.charts.push_back(std::move(child));
      }
    }
    if (!next.empty()) ++round;
    active = std::move(next);
  }
  res.report.rounds = round;
  if (options.verify) {
    auto checks = verify_resolution(res.tree, mode, codim);
    res.report.checks.insert(res.report.checks.end(), checks.begin(), checks.end());
  }
  return res;
}

Chart make_root(const Mobile& mobile, const std::vector<ExceptionalComponent>& components) {
  Chart root;
  root.id = "0";
  root.vars = mobile.J.vars();
  root.path = SubstitutionMap::identity(root.vars);
  root.edge = root.path;
  root.exceptional = components;
  root.mobile = mobile;
  const std::size_t n = mobile.dim();
  root.mobile.D.resize(n);
  root.mobile.E.resize(n);
  if (root.mobile.all_e.empty()) {
    std::set<unsigned> all;
    for (const auto& e : root.mobile.E) all.insert(e.begin(), e.end());
    root.mobile.all_e.assign(all.begin(), all.end());
  }
  return root;
}

}  // namespace

Resolution resolve_mobile(const Mobile& mobile, const std::vector<ExceptionalComponent>& components,
                          const ResolveOptions& options) {
  if (mobile.c == 0) throw InputRejected("control must be at least 1");
  if (mobile.J.is_zero()) throw InputRejected("the mobile ideal is zero");
  for (const auto& level : mobile.D)
    for (const auto& e : level)
      if (!find_component(components, e.label))
        throw InputRejected("handicap label " + std::to_string(e.label) + " has no component");
  for (const auto& level : mobile.E)
    for (unsigned lab : level)
      if (!find_component(components, lab)) throw InputRejected("handicap label " + std::to_string(lab) + " has no component");
  for (const auto& comp : components)
    if (!Ideal(mobile.J.vars(), {comp.equation}).smoothness_check(1).smooth)
      throw InputRejected("component " + std::to_string(comp.label) + " is not smooth");
  return run(make_root(mobile, components), Mode::Mobile, 1, options);
}

Resolution resolve_scheme(const Ideal& X, const ResolveOptions& options) {
  if (X.is_zero()) throw InputRejected("the ideal is zero");
  if (X.is_trivial()) throw InputRejected("the ideal is the unit ideal");
  Mobile m;
  m.J = X;
  m.c = 1;
  Chart root = make_root(m, {});
  root.strict = X;
  const unsigned codim = static_cast<unsigned>(X.nvars() - X.dimension());
  return run(std::move(root), Mode::Scheme, codim, options);
}

SeparatedMobile separate_components(const Ideal& X1, const Ideal& X2,
                                    const std::vector<ExceptionalComponent>& exceptional) {
  if (X2.is_zero()) throw AlgorithmError("second component is the zero ideal");
  const VarList& vars = X1.vars();
  CenterCoordinates cc = coordinatize_center(vars, X1.generators());
  if (cc.Z.size() != 1) throw AlgorithmError("first component is not a hypersurface");
  const std::size_t z = cc.Z.front();
  Ideal K = X2.map(cc.change);
  const VarList& nv = cc.change.target();

  // c = maximal order of K at points of X1.
  Ideal hyper(nv, {Polynomial::variable(nv, z)});
  unsigned c = top_order(hyper, K).first;
  if (c == 0) throw AlgorithmError("components are already disjoint");
  Ideal coeff = coefficient_ideal(K, c, z);
  if (coeff.is_zero()) throw AlgorithmError("components not distinct");

  SeparatedMobile out;
  out.change = cc.change;
  out.z = z;
  out.mobile.J = coeff;
  out.mobile.c = c;
  const VarList& sub = coeff.vars();
  const std::size_t n = sub->size();
  out.mobile.D.assign(n, {});
  out.mobile.E.assign(n, {});
  for (const auto& comp : exceptional) {
    Polynomial restricted = cc.change.apply(comp.equation).specialize(z, 0).with_vars(sub);
    if (restricted.is_constant()) continue;
    out.components.push_back({comp.label, restricted, comp.birth_step});
    if (n > 0) out.mobile.E[n - 1].push_back(comp.label);
    out.mobile.all_e.push_back(comp.label);
  }
  return out;
}

}  // namespace resol
