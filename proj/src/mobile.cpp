#include "resol/mobile.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace resol {

namespace {
constexpr unsigned long kMaxCoefficientExponent = 4096;
}  // namespace

const ExceptionalComponent* find_component(const std::vector<ExceptionalComponent>& comps, unsigned label) {
  for (const auto& c : comps)
    if (c.label == label) return &c;
  return nullptr;
}

std::string Tag::to_string() const {
  std::ostringstream out;
  out << "(" << o << "," << k << "," << ord_n << "," << lab_n << ")";
  return out.str();
}

std::vector<std::uint64_t> InvariantVector::flatten() const {
  std::vector<std::uint64_t> out;
  for (const auto& t : tags) {
    out.push_back(t.o);
    out.push_back(t.k);
    out.push_back(t.ord_n);
    out.push_back(t.lab_n);
  }
  return out;
}

std::string InvariantVector::to_string() const {
  std::ostringstream out;
  out << "(";
  auto flat = flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) out << (i ? "," : "") << flat[i];
  out << ")";
  return out.str();
}

std::uint64_t shortcut_label(const std::vector<unsigned>& labels) {
  std::uint64_t mask = 0;
  for (unsigned l : labels) {
    if (l == 0 || l > 64) throw AlgorithmError("shortcut labels must lie in 1..64");
    mask |= std::uint64_t{1} << (l - 1);
  }
  return mask;
}

unsigned long long factorial(unsigned k) {
  if (k > 12) throw ResourceLimit("control " + std::to_string(k) + "! too large");
  unsigned long long f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

Ideal companion_ideal(const Ideal& I, const Polynomial& M, unsigned o, unsigned c) {
  if (o > 0 && o < c) return I.pow(c - o) + Ideal(I.vars(), {M.pow(o)});
  return I;
}

Ideal transversality_ideal(const std::vector<Polynomial>& restricted_equations, const VarList& vars) {
  Polynomial q = Polynomial::constant(vars, 1);
  for (const auto& f : restricted_equations) {
    if (f.is_zero()) throw AlgorithmError("flag contained in transversal component");
    if (f.order() != 1u)
      throw AlgorithmError("transversal component " + f.to_string() + " is not transversal to the flag");
    q = q * f.with_vars(vars);
  }
  return Ideal(vars, {q});
}

Ideal composition_ideal(const Ideal& P, const Ideal& Q, const Ideal& I) {
  if (I.is_trivial()) return Ideal::unit(I.vars());
  return P * Q;
}

namespace {

// Multi-indices of the given total order, lexicographically descending.
void multi_indices(std::size_t n, unsigned total, std::vector<Exponent>& cur, std::size_t pos,
                   std::vector<std::vector<Exponent>>& out) {
  if (pos + 1 == n) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (unsigned a = total + 1; a-- > 0;) {
    cur[pos] = a;
    multi_indices(n, total - a, cur, pos + 1, out);
  }
}

}  // namespace

namespace {

// Writes the hyperplane {g = 0} as {v + h = 0} with h free of v, when possible.
std::optional<Polynomial> solve_linear(const Polynomial& g, std::size_t v) {
  const VarList& vars = g.vars();
  const std::size_t n = g.nvars();
  Monomial mv(n);
  mv[v] = 1;
  Rational lc = g.coefficient(mv);
  if (lc == 0) return std::nullopt;
  Polynomial normalized = g * (Rational(1) / lc);
  Polynomial h = normalized - Polynomial::variable(vars, v);
  if (!h.involves(v)) return h;
  // g = v * unit: the hyperplane is v itself.
  if (auto w = g.try_divide(Polynomial::variable(vars, v)); w && w->constant_term() != 0)
    return Polynomial(vars);
  // g = a*v + b with a a unit at the origin: the hyperplane is v + b/a when a divides b.
  if (g.degree_in(v) != 1) return std::nullopt;
  auto parts = g.expand_in(v);
  const Polynomial& a = parts[1];
  const Polynomial& b = parts[0];
  if (a.constant_term() == 0) return std::nullopt;
  auto q = b.try_divide(a);
  if (!q) return std::nullopt;
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    if (i != v) pos.push_back(i);
  return q->embed(vars, pos);
}

bool transversal_after(const SubstitutionMap& change, std::size_t v, const std::vector<Polynomial>& comps) {
  for (const auto& f : comps) {
    Polynomial r = change.apply(f).specialize(v, 0);
    if (r.is_zero() || r.order() != 1u) return false;
  }
  return true;
}

}  // namespace

std::vector<Osculating> osculating_candidates(const Ideal& I, const std::string& new_name, OsculatingPolicy policy,
                                              const std::vector<Polynomial>& transversal_to) {
  auto o = I.order();
  if (!o || *o == 0) throw AlgorithmError("osculating hypersurface needs an ideal of positive order");
  const VarList& vars = I.vars();
  const std::size_t n = I.nvars();

  std::vector<Polynomial> gens;
  for (const auto& g : I.generators())
    if (g.order() == o) gens.push_back(g);
  std::sort(gens.begin(), gens.end(),
            [](const Polynomial& a, const Polynomial& b) { return a.to_string() < b.to_string(); });

  if (n == 1) {
    // On a curve the hypersurface is the point itself.
    Osculating out;
    out.g = Polynomial::variable(vars, 0);
    out.new_name = (*vars)[0];
    out.change = SubstitutionMap::identity(vars);
    out.generator = policy == OsculatingPolicy::Last ? gens.back() : gens.front();
    out.multi_index.assign(1, *o - 1);
    return {out};
  }

  std::vector<std::vector<Exponent>> alphas;
  std::vector<Exponent> cur(n, 0);
  multi_indices(n, *o - 1, cur, 0, alphas);
  if (policy == OsculatingPolicy::Last) {
    std::reverse(gens.begin(), gens.end());
    std::reverse(alphas.begin(), alphas.end());
  }

  std::vector<Osculating> preferred, others;
  auto seen = [&](const Polynomial& g) {
    auto same = [&](const Osculating& c) { return c.g == g; };
    return std::any_of(preferred.begin(), preferred.end(), same) || std::any_of(others.begin(), others.end(), same);
  };
  for (const auto& f : gens) {
    for (const auto& alpha : alphas) {
      Polynomial g = f.derivative(alpha);
      if (g.order() != 1u) continue;
      for (std::size_t v = 0; v < n; ++v) {
        auto h = solve_linear(g, v);
        if (!h) continue;
        Osculating out;
        out.variable = v;
        out.g = Polynomial::variable(vars, v) + *h;
        if (seen(out.g)) continue;
        out.generator = f;
        out.multi_index = alpha;
        if (h->is_zero()) {
          out.new_name = (*vars)[v];
          out.change = SubstitutionMap::identity(vars);
        } else {
          std::vector<std::string> names = *vars;
          names[v] = new_name;
          VarList target = make_vars(std::move(names));
          std::vector<Polynomial> images;
          for (std::size_t i = 0; i < n; ++i) {
            if (i == v)
              images.push_back(Polynomial::variable(target, v) - h->with_vars(target));
            else
              images.push_back(Polynomial::variable(target, i));
          }
          out.new_name = new_name;
          out.change = SubstitutionMap(vars, target, std::move(images), SubstitutionKind::TriangularAutomorphism);
        }
        if (transversal_after(out.change, v, transversal_to))
          preferred.push_back(std::move(out));
        else
          others.push_back(std::move(out));
      }
    }
  }
  if (!preferred.empty() || !others.empty()) {
    for (auto& c : others) preferred.push_back(std::move(c));
    return preferred;
  }
  for (const auto& f : gens) {
    for (const auto& alpha : alphas) {
      Polynomial g = f.derivative(alpha);
      if (g.order() != 1u) continue;
      for (std::size_t v = 0; v < n; ++v) {
        Monomial mv(n);
        mv[v] = 1;
        Rational lc = g.coefficient(mv);
        if (lc == 0) continue;
        Osculating out;
        out.variable = v;
        out.g = g * (Rational(1) / lc);
        out.new_name = (*vars)[v];
        out.change = SubstitutionMap::identity(vars);
        out.generator = f;
        out.multi_index = alpha;
        out.coordinable = false;
        return {out};
      }
    }
  }
  throw AlgorithmError("no order-one derivative for " + I.to_string());
}

Osculating osculating_hypersurface(const Ideal& I, const std::string& new_name, OsculatingPolicy policy,
                                   const std::vector<Polynomial>& transversal_to) {
  return osculating_candidates(I, new_name, policy, transversal_to).front();
}

namespace {

VarList without(const VarList& vars, std::size_t z) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars->size(); ++i)
    if (i != z) names.push_back((*vars)[i]);
  return make_vars(std::move(names));
}

}  // namespace

Ideal coefficient_ideal(const Ideal& K, unsigned c, std::size_t z) {
  if (c == 0) throw AlgorithmError("coefficient ideal needs a positive control");
  VarList target = without(K.vars(), z);
  std::map<unsigned, std::vector<Polynomial>> coeffs;
  for (const auto& f : K.generators()) {
    auto parts = f.expand_in(z);
    for (unsigned j = 0; j < c && j < parts.size(); ++j)
      if (!parts[j].is_zero()) coeffs[j].push_back(parts[j].with_vars(target));
  }
  Ideal result = Ideal::zero(target);
  if (coeffs.empty()) return result;
  mpz_class cf;
  mpz_fac_ui(cf.get_mpz_t(), c);
  for (auto& [j, gens] : coeffs) {
    mpz_class e = cf / (c - j);
    if (e > kMaxCoefficientExponent) throw ResourceLimit("coefficient ideal exponent " + e.get_str() + " too large");
    Ideal a(target, gens);
    if (a.generators().size() > 1) a = a.reduced();
    result = result + a.pow(static_cast<unsigned>(e.get_ui()));
  }
  if (result.generators().size() > 1) result = result.reduced();
  return result;
}

Junior junior_ideal(const Ideal& K, unsigned c, std::size_t z) {
  VarList target = without(K.vars(), z);
  if (K.is_trivial()) return {Ideal::unit(target), false};
  Ideal coeff = coefficient_ideal(K, c, z);
  if (coeff.is_zero()) return {Ideal::unit(target), true};
  return {coeff, false};
}

Shortcut maximal_tight_shortcut(const std::vector<DEntry>& entries, unsigned c) {
  std::vector<DEntry> present;
  for (const auto& e : entries)
    if (e.mult > 0) present.push_back(e);
  std::sort(present.begin(), present.end(), [](const DEntry& a, const DEntry& b) { return a.label < b.label; });
  if (present.size() > 20) throw ResourceLimit("too many combinatorial components at one point");
  std::optional<Shortcut> best;
  const std::size_t m = present.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    unsigned total = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) total += present[i].mult;
    if (total < c) continue;
    // Tight: dropping any single member falls below c (orders are monotone).
    bool tight = true;
    for (std::size_t i = 0; i < m && tight; ++i)
      if ((mask >> i & 1u) && total - present[i].mult >= c) tight = false;
    if (!tight) continue;
    Shortcut s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) s.labels.push_back(present[i].label);
    s.order = total;
    s.label = shortcut_label(s.labels);
    if (!best || std::tie(s.order, s.label) > std::tie(best->order, best->label)) best = s;
  }
  if (!best) throw AlgorithmError("no tight shortcut");
  return *best;
}

Tag compute_tag(unsigned o, unsigned k, const std::optional<Shortcut>& shortcut) {
  if (o > 0) return Tag{o, k, 0, 0};
  if (!shortcut) throw AlgorithmError("order zero level without a shortcut");
  return Tag{0, 0, shortcut->order, shortcut->label};
}

std::string to_string(StopKind kind) {
  switch (kind) {
    case StopKind::BoldRegular: return "bold-regular";
    case StopKind::Combinatorial: return "combinatorial";
    case StopKind::Resolved: return "resolved";
  }
  return "?";
}

std::vector<unsigned> Setup::o_by_level() const {
  std::size_t n = invariant.tags.size();
  std::vector<unsigned> out(n, 0);
  for (const auto& l : levels) out[l.level - 1] = l.o;
  return out;
}

std::vector<unsigned> Setup::control_by_level() const {
  std::size_t n = invariant.tags.size();
  std::vector<unsigned> out(n, 0);
  for (const auto& l : levels) out[l.level - 1] = l.control;
  return out;
}

}  // namespace resol
