#include "resol/chart.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace resol {

std::string to_string(ChartStatus status) {
  switch (status) {
    case ChartStatus::Active: return "active";
    case ChartStatus::BlownUp: return "blown-up";
    case ChartStatus::Resolved: return "resolved";
    case ChartStatus::Failed: return "failed";
  }
  return "?";
}

const Chart* ChartTree::find(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<const Chart*> ChartTree::leaves() const {
  std::vector<const Chart*> out;
  for (const auto& c : charts)
    if (c.status != ChartStatus::BlownUp) out.push_back(&c);
  return out;
}

CenterCoordinates coordinatize_center(const VarList& vars, const std::vector<Polynomial>& center) {
  if (center.empty()) throw AlgorithmError("center not coordinable: empty center");
  for (std::size_t i = 0; i < center.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (center[i].monic() == center[j].monic())
        throw AlgorithmError("center not coordinable: duplicate generator " + center[i].to_string());
  Ideal C(vars, center);
  if (C.is_trivial()) throw AlgorithmError("center not coordinable: empty zero set");
  GroebnerBasis gb = C.groebner(MonomialOrder::lex());
  const std::size_t n = vars->size();

  std::set<std::string> used(vars->begin(), vars->end());
  std::vector<std::string> names = *vars;
  std::vector<std::pair<std::size_t, Polynomial>> replaced;  // variable, tail
  std::vector<std::size_t> Z;
  unsigned counter = 0;
  for (const auto& g : gb.elements()) {
    Monomial lm = gb.leading_monomial(g);
    std::size_t v = n;
    if (lm.degree() == 1)
      for (std::size_t i = 0; i < n; ++i)
        if (lm[i] == 1) v = i;
    if (v == n) throw AlgorithmError("center not coordinable: " + C.to_string());
    Polynomial h = g - Polynomial::variable(vars, v);  // monic basis element
    Z.push_back(v);
    if (!h.is_zero()) {
      std::string name;
      do name = "u" + std::to_string(++counter);
      while (!used.insert(name).second);
      names[v] = name;
      replaced.emplace_back(v, h);
    }
  }
  std::sort(Z.begin(), Z.end());
  if (replaced.empty()) return {Z, SubstitutionMap::identity(vars)};
  VarList target = make_vars(std::move(names));
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(target, i));
  for (const auto& [v, h] : replaced) images[v] = Polynomial::variable(target, v) - h.with_vars(target);
  return {Z, SubstitutionMap(vars, target, std::move(images), SubstitutionKind::TriangularAutomorphism)};
}

Chart change_coordinates(const Chart& chart, const SubstitutionMap& change) {
  Chart out = chart;
  if (change.is_identity()) return out;
  out.vars = change.target();
  out.path = chart.path.then(change);
  out.mobile.J = chart.mobile.J.map(change);
  for (auto& comp : out.exceptional) comp.equation = change.apply(comp.equation);
  if (chart.strict) out.strict = chart.strict->map(change);
  return out;
}

Ideal transform_ideal(const Ideal& I, TransformKind kind, const SubstitutionMap& map, std::size_t y,
                      unsigned amount) {
  Ideal total = I.map(map);
  if (kind == TransformKind::Total || amount == 0) return total;
  Polynomial divisor = Polynomial::variable(map.target(), y).pow(amount);
  std::vector<Polynomial> gens;
  for (const auto& g : total.generators()) gens.push_back(g.exact_divide(divisor));
  return Ideal(map.target(), std::move(gens));
}

SubstitutionMap blowup_map(const VarList& vars, const std::vector<std::size_t>& Z, std::size_t pivot) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < vars->size(); ++i) images.push_back(Polynomial::variable(vars, i));
  for (std::size_t q : Z)
    if (q != pivot) images[q] = Polynomial::variable(vars, pivot) * Polynomial::variable(vars, q);
  return SubstitutionMap(vars, vars, std::move(images), SubstitutionKind::BlowupChart);
}

namespace {

unsigned ord_along(const Polynomial& f, const std::vector<std::size_t>& Z) {
  return f.order_along(Z).value_or(0);
}

// Strict transform of a hypersurface equation; nullopt when it misses the chart.
std::optional<Polynomial> strict_equation(const Polynomial& f, const std::vector<std::size_t>& Z,
                                          const SubstitutionMap& map, std::size_t y) {
  Polynomial pulled = map.apply(f);
  Polynomial divisor = Polynomial::variable(map.target(), y).pow(ord_along(f, Z));
  Polynomial s = pulled.exact_divide(divisor);
  if (s.is_constant()) return std::nullopt;
  return s;
}

}  // namespace

namespace {

// Handicap transport shared by chart and hypersurface blowups. `order` is the
// order of a parent component along the center, `y` the equation of Y'.
Mobile transport(const Mobile& parent, const Setup& setup, const std::vector<ExceptionalComponent>& parent_comps,
                 const std::function<unsigned(const Polynomial&)>& order, Ideal J, unsigned y_label,
                 const std::vector<ExceptionalComponent>& child_comps) {
  const std::size_t n = parent.dim();
  Mobile child;
  child.c = parent.c;
  child.J = std::move(J);
  child.D.assign(n, {});
  child.E.assign(n, {});
  auto survives = [&](unsigned label) { return find_component(child_comps, label) != nullptr; };

  for (const auto& L : setup.levels) {
    const std::size_t idx = L.level - 1;
    long long y_mult = static_cast<long long>(L.o) - static_cast<long long>(L.control);
    DList d;
    for (const auto& e : L.D) {
      const ExceptionalComponent* comp = find_component(parent_comps, e.label);
      if (comp == nullptr) throw AlgorithmError("handicap label without component");
      y_mult += static_cast<long long>(e.mult) * order(comp->equation);
      if (e.label != y_label && survives(e.label) && e.mult > 0) d.push_back(e);
    }
    if (y_mult < 0)
      throw AlgorithmError("negative exceptional multiplicity at level " + std::to_string(L.level) +
                           ": center not contained in the top locus");
    if (y_mult > 0) d.push_back({y_label, static_cast<unsigned>(y_mult)});
    child.D[idx] = std::move(d);
    for (unsigned lab : L.E)
      if (lab != y_label && survives(lab)) child.E[idx].push_back(lab);
  }
  child.all_e.push_back(y_label);
  for (unsigned lab : parent.all_e)
    if (lab != y_label && survives(lab)) child.all_e.push_back(lab);
  std::sort(child.all_e.begin(), child.all_e.end());
  child.reference = HandicapReference{setup.invariant, setup.o_by_level()};
  return child;
}

unsigned multiplicity(const Polynomial& f, const Polynomial& g) {
  unsigned m = 0;
  Polynomial rest = f;
  while (!rest.is_zero()) {
    auto q = rest.try_divide(g);
    if (!q) break;
    rest = std::move(*q);
    ++m;
  }
  return m;
}

}  // namespace

Mobile transform_mobile(const Mobile& parent, const Setup& setup, const std::vector<ExceptionalComponent>& parent_comps,
                        const std::vector<std::size_t>& Z, const SubstitutionMap& map, std::size_t y,
                        unsigned y_label, const std::vector<ExceptionalComponent>& child_comps) {
  return transport(parent, setup, parent_comps, [&](const Polynomial& f) { return ord_along(f, Z); },
                   transform_ideal(parent.J, TransformKind::Controlled, map, y, parent.c), y_label, child_comps);
}

Chart blowup_hypersurface(const Chart& chart, const Polynomial& g, const Setup& setup, unsigned label, unsigned step) {
  if (g.is_constant()) throw AlgorithmError("hypersurface center is empty");
  Polynomial y = g.monic();
  Chart child;
  child.id = chart.id + ".1";
  child.parent = chart.id;
  child.step = step;
  child.vars = chart.vars;
  child.edge = SubstitutionMap::identity(chart.vars);
  child.path = chart.path;
  for (const auto& comp : chart.exceptional)
    if (comp.equation.monic() != y) child.exceptional.push_back(comp);
  child.exceptional.push_back({label, y, step});
  const Polynomial yc = y.pow(chart.mobile.c);
  std::vector<Polynomial> gens;
  for (const auto& f : chart.mobile.J.generators()) {
    auto q = f.try_divide(yc);
    if (!q) throw AlgorithmError("mobile ideal not divisible by the control power of " + y.to_string());
    gens.push_back(std::move(*q));
  }
  child.mobile = transport(chart.mobile, setup, chart.exceptional,
                           [&](const Polynomial& f) { return multiplicity(f, y); }, Ideal(chart.vars, std::move(gens)),
                           label, child.exceptional);
  if (chart.strict) child.strict = chart.strict->saturate(y);
  return child;
}

std::vector<Chart> blowup_chart(const Chart& chart, const std::vector<std::size_t>& Z, const Setup& setup,
                                unsigned label, unsigned step) {
  if (Z.empty()) throw AlgorithmError("blowup with an empty center");
  std::vector<Chart> out;
  for (std::size_t p = 0; p < Z.size(); ++p) {
    const std::size_t pivot = Z[p];
    SubstitutionMap map = blowup_map(chart.vars, Z, pivot);
    Chart child;
    child.id = chart.id + "." + std::to_string(p + 1);
    child.parent = chart.id;
    child.step = step;
    child.vars = chart.vars;
    child.edge = chart.center_change.source() ? chart.center_change.then(map) : map;
    child.path = chart.path.then(map);
    for (const auto& comp : chart.exceptional) {
      auto s = strict_equation(comp.equation, Z, map, pivot);
      if (s) child.exceptional.push_back({comp.label, *s, comp.birth_step});
    }
    child.exceptional.push_back({label, Polynomial::variable(chart.vars, pivot), step});
    child.mobile = transform_mobile(chart.mobile, setup, chart.exceptional, Z, map, pivot, label, child.exceptional);
    if (chart.strict) {
      Ideal pulled = chart.strict->map(map);
      child.strict = pulled.saturate(Polynomial::variable(chart.vars, pivot));
    }
    out.push_back(std::move(child));
  }
  return out;
}

}  // namespace resol
