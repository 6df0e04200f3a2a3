#include "resol/mobile.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace resol {

namespace {

std::string fresh_coordinate(std::set<std::string>& used, unsigned& counter) {
  for (;;) {
    std::string name = "u" + std::to_string(++counter);
    if (used.insert(name).second) return name;
  }
}

// The flag chosen above `depth` violates the setup conditions at `depth`.
struct FlagRejected : AlgorithmError {
  FlagRejected(std::size_t d, const std::string& what) : AlgorithmError(what), depth(d) {}
  std::size_t depth;
};

// No candidate is left at `depth`.
struct PicksExhausted {
  std::size_t depth;
};

struct Restricted {
  const ExceptionalComponent* comp;
  Polynomial eq;  // restricted to the current flag level
  bool through_origin;
};

Restricted restrict_component(const std::vector<ExceptionalComponent>& comps, unsigned label,
                              const std::vector<Polynomial>& chart_to_level, const char* what,
                              std::size_t depth) {
  const ExceptionalComponent* comp = find_component(comps, label);
  if (comp == nullptr)
    throw AlgorithmError(std::string(what) + " label " + std::to_string(label) + " has no component in the chart");
  Polynomial f = comp->equation.compose(chart_to_level);
  if (f.is_zero())
    throw FlagRejected(depth, std::string("flag contained in ") + what + " component " + std::to_string(label));
  return {comp, f, f.constant_term() == 0};
}

Setup descend(const Mobile& mobile, const std::vector<ExceptionalComponent>& components, OsculatingPolicy policy,
              const std::vector<std::size_t>& picks) {
  const std::size_t n = mobile.dim();
  if (n == 0) throw AlgorithmError("setup needs a positive-dimensional chart");
  if (mobile.J.is_zero()) throw AlgorithmError("mobile ideal is zero");
  const VarList chart_vars = mobile.J.vars();
  const auto& ref = mobile.reference;

  Setup s;
  s.invariant.tags.assign(n, Tag{});

  std::set<std::string> used(chart_vars->begin(), chart_vars->end());
  unsigned counter = 0;

  VarList level_vars = chart_vars;
  Ideal J = mobile.J;
  unsigned control = mobile.c;
  std::vector<Polynomial> chart_to_level;
  std::vector<Polynomial> level_to_chart;
  for (std::size_t i = 0; i < n; ++i) {
    chart_to_level.push_back(Polynomial::variable(chart_vars, i));
    level_to_chart.push_back(Polynomial::variable(chart_vars, i));
  }
  std::set<unsigned> chosen_e;
  std::vector<Polynomial> flags;

  for (unsigned level = static_cast<unsigned>(n); level >= 1; --level) {
    const std::size_t idx = level - 1;
    const std::size_t depth = n - level;  // number of levels above
    SetupLevel L;
    L.level = level;
    L.vars = level_vars;
    L.J = J;
    L.control = control;

    bool in_t = !ref || depth == 0 ||
                std::equal(s.invariant.tags.begin(), s.invariant.tags.begin() + static_cast<std::ptrdiff_t>(depth),
                           ref->parent_tags.tags.begin());
    if (in_t && idx < mobile.D.size()) L.D = mobile.D[idx];

    // M is the handicap monomial at the point. Dividing also by the components
    // missing the point (units here) keeps their factors out of the flags when possible.
    Polynomial M = Polynomial::constant(level_vars, 1);
    Polynomial M_all = M;
    std::vector<DEntry> at_point;
    for (const auto& e : L.D) {
      if (e.mult == 0) continue;
      Restricted r = restrict_component(components, e.label, chart_to_level, "combinatorial", depth);
      Polynomial power = r.eq.with_vars(level_vars).pow(e.mult);
      M_all = M_all * power;
      if (!r.through_origin) continue;
      M = M * power;
      at_point.push_back({e.label, e.mult * r.eq.order().value()});
    }
    L.M = M;

    auto divide_all = [&](const Polynomial& m) {
      std::vector<Polynomial> quotients;
      for (const auto& g : J.generators()) {
        auto q = g.try_divide(m);
        if (!q) return std::optional<std::vector<Polynomial>>{};
        quotients.push_back(std::move(*q));
      }
      return std::optional{std::move(quotients)};
    };
    auto quotients = divide_all(M_all);
    if (!quotients) quotients = divide_all(M);
    if (!quotients)
      throw FlagRejected(depth, "level " + std::to_string(level) + ": " + J.to_string() +
                                    " is not divisible by the handicap monomial " + M.to_string());
    L.I = Ideal(level_vars, std::move(*quotients));
    L.o = L.I.order().value();

    if (L.o == 0) {
      auto ord_m = M.order().value_or(0);
      if (ord_m < control)
        throw AlgorithmError("combinatorial stop with handicap order " + std::to_string(ord_m) +
                             " below control " + std::to_string(control));
      Shortcut sc = maximal_tight_shortcut(at_point, control);
      L.shortcut = sc;
      L.tag = compute_tag(0, 0, sc);
      L.P = L.I;
      L.Q = Ideal::unit(level_vars);
      L.K = Ideal::unit(level_vars);
      s.invariant.tags[depth] = L.tag;
      s.center = flags;
      for (unsigned lab : sc.labels) s.center.push_back(find_component(components, lab)->equation);
      s.levels.push_back(std::move(L));
      s.stop = StopKind::Combinatorial;
      s.stop_level = level;
      return s;
    }

    bool on_o = !ref || (in_t && idx < ref->parent_o.size() && L.o == ref->parent_o[idx]);
    if (on_o) {
      if (idx < mobile.E.size()) L.E = mobile.E[idx];
    } else {
      for (unsigned lab : mobile.all_e)
        if (!chosen_e.count(lab)) L.E.push_back(lab);
    }
    chosen_e.insert(L.E.begin(), L.E.end());

    std::vector<Polynomial> q_eqs;
    for (unsigned lab : L.E) {
      Restricted r = restrict_component(components, lab, chart_to_level, "transversal", depth);
      if (r.through_origin) q_eqs.push_back(r.eq);
    }
    L.P = companion_ideal(L.I, M, L.o, control);
    L.Q = transversality_ideal(q_eqs, level_vars);
    L.K = composition_ideal(L.P, L.Q, L.I);
    L.k = L.K.order().value();
    L.tag = compute_tag(L.o, L.k, std::nullopt);
    s.invariant.tags[depth] = L.tag;

    // Components already collected in E_n..E_level may meet the next flag non-transversally.
    std::vector<Polynomial> through;
    for (const auto& comp : components) {
      if (chosen_e.count(comp.label)) continue;
      Polynomial f = comp.equation.compose(chart_to_level).with_vars(level_vars);
      if (!f.is_zero() && f.order() == 1u) through.push_back(std::move(f));
    }
    auto candidates = osculating_candidates(L.I, fresh_coordinate(used, counter), policy, through);
    if (picks[depth] >= candidates.size()) throw PicksExhausted{depth};
    Osculating osc = std::move(candidates[picks[depth]]);
    Polynomial flag = osc.g.compose(level_to_chart);
    L.flag = osc.new_name;
    L.flag_in_chart = flag;
    flags.push_back(flag);

    if (!osc.coordinable) {
      // Without coordinates only the bold regular case K in (g^k) can be decided.
      Polynomial gk = osc.g.pow(L.k);
      bool bold = std::all_of(L.K.generators().begin(), L.K.generators().end(),
                              [&](const Polynomial& f) { return f.try_divide(gk).has_value(); });
      if (!bold) throw AlgorithmError("osculating hypersurface not coordinable for " + L.I.to_string());
      s.levels.push_back(std::move(L));
      s.stop = StopKind::BoldRegular;
      s.stop_level = level;
      s.center = flags;
      return s;
    }
    Ideal K_new = L.K.map(osc.change);

    Junior jr = junior_ideal(K_new, L.k, osc.variable);
    const unsigned k = L.k;
    s.levels.push_back(std::move(L));

    if (jr.bold_regular) {
      s.stop = StopKind::BoldRegular;
      s.stop_level = level;
      s.center = flags;
      return s;
    }
    if (level == 1) throw AlgorithmError("descent exceeded the ambient dimension");

    const unsigned next_control = static_cast<unsigned>(factorial(k));
    auto next_order = jr.J.order();
    if (!next_order || *next_order < next_control)
      throw AlgorithmError("coefficient ideal order below its control at level " + std::to_string(level));

    // Move to W_{level-1} = {flag = 0}.
    VarList next_vars = jr.J.vars();
    std::vector<Polynomial> next_chart_to_level;
    for (const auto& img : chart_to_level) {
      Polynomial moved = osc.change.apply(img).specialize(osc.variable, 0);
      next_chart_to_level.push_back(moved.with_vars(next_vars));
    }
    chart_to_level = std::move(next_chart_to_level);
    level_to_chart.erase(level_to_chart.begin() + static_cast<std::ptrdiff_t>(osc.variable));
    level_vars = next_vars;
    J = jr.J;
    control = next_control;
  }
  throw AlgorithmError("descent ended without a stop");
}

}  // namespace

// Flags are tried in preference order; a flag whose lower levels break the
// setup conditions is replaced by the next candidate at its level.
Setup build_setup(const Mobile& mobile, const std::vector<ExceptionalComponent>& components,
                  OsculatingPolicy policy) {
  std::vector<std::size_t> picks(std::max<std::size_t>(mobile.dim(), 1), 0);
  std::optional<FlagRejected> first_error;
  auto next_at = [&](std::size_t depth) {
    // Advance the pick at `depth`, resetting everything below it.
    ++picks[depth];
    std::fill(picks.begin() + static_cast<std::ptrdiff_t>(depth) + 1, picks.end(), 0);
  };
  for (int attempt = 0; attempt < 256; ++attempt) {
    try {
      return descend(mobile, components, policy, picks);
    } catch (const FlagRejected& e) {
      if (!first_error) first_error = e;
      if (e.depth == 0) throw AlgorithmError(first_error->what());
      next_at(e.depth - 1);
    } catch (const PicksExhausted& e) {
      if (e.depth == 0) throw AlgorithmError(first_error->what());
      next_at(e.depth - 1);
    }
  }
  throw AlgorithmError(std::string("no admissible flag: ") + first_error->what());
}

}  // namespace resol
