#include "resol/resolver.hpp"

namespace resol {

Check normal_crossings(const std::optional<Ideal>& strict, unsigned codim,
                       const std::vector<ExceptionalComponent>& components, const VarList& vars) {
  Check check{"normal-crossings", "", true, ""};
  const bool with_strict = strict && !strict->is_trivial();
  const std::size_t items = components.size() + (with_strict ? 1 : 0);
  const std::size_t n = vars->size();
  for (std::size_t size = 1; size <= items; ++size) {
    for (const auto& subset : subsets(items, size)) {
      std::vector<Polynomial> gens;
      unsigned total = 0;
      std::string names;
      for (std::size_t i : subset) {
        if (with_strict && i == 0) {
          gens.insert(gens.end(), strict->generators().begin(), strict->generators().end());
          total += codim;
          names += "X' ";
        } else {
          const auto& comp = components[i - (with_strict ? 1 : 0)];
          gens.push_back(comp.equation);
          total += 1;
          names += "E" + std::to_string(comp.label) + " ";
        }
      }
      Ideal locus(vars, gens);
      if (total <= n) locus = locus + Ideal(vars, jacobian_minors(gens, total, vars));
      if (!locus.is_trivial()) {
        check.pass = false;
        check.witness = names + "meet non-transversally along " + locus.reduced().to_string();
        return check;
      }
    }
  }
  return check;
}

Check center_transversality(const std::vector<Polynomial>& center, const std::vector<ExceptionalComponent>& components,
                            const VarList& vars) {
  Check check{"center-transversal", "", true, ""};
  Ideal C(vars, center);
  const unsigned r = static_cast<unsigned>(center.size());
  Ideal sing = C + Ideal(vars, jacobian_minors(center, r, vars));
  if (!sing.is_trivial()) {
    check.pass = false;
    check.witness = "center singular along " + sing.reduced().to_string();
    return check;
  }
  for (const auto& comp : components) {
    if (C.contains(comp.equation)) continue;
    std::vector<Polynomial> gens = center;
    gens.push_back(comp.equation);
    Ideal locus(vars, gens);
    if (r + 1 <= vars->size()) locus = locus + Ideal(vars, jacobian_minors(gens, r + 1, vars));
    if (!locus.is_trivial()) {
      check.pass = false;
      check.witness = "center not transversal to E" + std::to_string(comp.label) + " along " +
                      locus.reduced().to_string();
      return check;
    }
  }
  return check;
}

std::vector<Check> verify_chart(const Chart& chart, Mode mode, unsigned codim) {
  std::vector<Check> out;
  if (mode == Mode::Scheme && chart.strict) {
    auto sm = chart.strict->smoothness_check(codim);
    out.push_back({"strict-transform-smooth", chart.id, sm.smooth, sm.smooth ? "" : sm.witness.reduced().to_string()});
  }
  if (mode == Mode::Mobile) {
    const Ideal& J = chart.mobile.J;
    Ideal top = J.delta_power(chart.mobile.c - 1);
    bool ok = top.is_trivial();
    out.push_back({"order-below-control", chart.id, ok, ok ? "" : top.reduced().to_string()});
  }
  bool comps_ok = true;
  std::string comp_witness;
  for (const auto& comp : chart.exceptional) {
    auto sm = Ideal(chart.vars, {comp.equation}).smoothness_check(1);
    if (!sm.smooth && comps_ok) {
      comps_ok = false;
      comp_witness = "E" + std::to_string(comp.label) + " singular along " + sm.witness.reduced().to_string();
    }
  }
  out.push_back({"exceptional-smooth", chart.id, comps_ok, comp_witness});
  Check nc = normal_crossings(mode == Mode::Scheme ? chart.strict : std::nullopt, codim, chart.exceptional, chart.vars);
  nc.chart = chart.id;
  out.push_back(nc);
  return out;
}

std::vector<Check> verify_resolution(const ChartTree& tree, Mode mode, unsigned codim) {
  std::vector<Check> out;
  for (const Chart* leaf : tree.leaves()) {
    auto checks = verify_chart(*leaf, mode, codim);
    out.insert(out.end(), checks.begin(), checks.end());
  }
  return out;
}

}  // namespace resol
