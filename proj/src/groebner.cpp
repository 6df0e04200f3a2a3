#include "resol/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace resol {

namespace {

bool grevlex_range_greater(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

struct OrderCmp {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

using Terms = std::vector<std::pair<Monomial, Rational>>;
using WorkMap = std::map<Monomial, Rational, OrderCmp>;

Terms sorted_terms(const Polynomial& p, const MonomialOrder& order) {
  Terms t(p.terms().begin(), p.terms().end());
  std::sort(t.begin(), t.end(),
            [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
  return t;
}

void make_monic(Terms& t) {
  if (t.empty() || t.front().second == 1) return;
  Rational inv = 1 / t.front().second;
  for (auto& [m, c] : t) c *= inv;
}

// Full reduction of `f` by the given elements (monic, sorted).
Terms full_reduce(const Terms& f, const std::vector<const Terms*>& by, const MonomialOrder& order) {
  OrderCmp cmp{&order};
  WorkMap rem(f.begin(), f.end(), cmp);
  Terms out;
  while (!rem.empty()) {
    auto it = rem.begin();
    const Monomial m = it->first;
    const Rational c = it->second;
    const Terms* div = nullptr;
    for (const Terms* g : by) {
      if (g->front().first.divides(m)) {
        div = g;
        break;
      }
    }
    if (div == nullptr) {
      out.emplace_back(m, c);
      rem.erase(it);
      continue;
    }
    const Monomial q = m / div->front().first;
    rem.erase(it);
    for (std::size_t k = 1; k < div->size(); ++k) {
      const auto& [gm, gc] = (*div)[k];
      Monomial prod = gm * q;
      auto [pos, inserted] = rem.try_emplace(std::move(prod), -c * gc);
      if (!inserted) {
        pos->second -= c * gc;
        if (pos->second == 0) rem.erase(pos);
      }
    }
  }
  return out;
}

Terms s_polynomial(const Terms& f, const Terms& g, const MonomialOrder& order) {
  const Monomial l = f.front().first.lcm(g.front().first);
  const Monomial qf = l / f.front().first;
  const Monomial qg = l / g.front().first;
  OrderCmp cmp{&order};
  WorkMap acc(cmp);
  for (std::size_t k = 1; k < f.size(); ++k) acc.emplace(f[k].first * qf, f[k].second);
  for (std::size_t k = 1; k < g.size(); ++k) {
    Monomial m = g[k].first * qg;
    auto [pos, inserted] = acc.try_emplace(std::move(m), -g[k].second);
    if (!inserted) {
      pos->second -= g[k].second;
      if (pos->second == 0) acc.erase(pos);
    }
  }
  return Terms(acc.begin(), acc.end());
}

Polynomial to_polynomial(const Terms& t, const VarList& vars) {
  Polynomial::TermMap map;
  for (const auto& [m, c] : t) map.emplace(m, c);
  return Polynomial(vars, std::move(map));
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, const GroebnerLimits& limits)
      : order_(order), limits_(limits), pairs_(PairCmp{&order_}) {}

  // Returns false when the unit ideal was detected.
  bool run(std::vector<Terms> inputs) {
    for (auto& f : inputs) {
      if (f.empty()) continue;
      make_monic(f);
      if (f.front().first.degree() == 0) return false;
      update(std::move(f));
    }
    std::size_t processed = 0;
    while (!pairs_.empty()) {
      if (++processed > limits_.max_pairs) throw ResourceLimit("Groebner basis: S-pair limit exceeded");
      Pair p = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      Terms s = s_polynomial(polys_[p.i], polys_[p.j], order_);
      if (s.empty()) continue;
      Terms h = full_reduce(s, active_list(), order_);
      if (h.empty()) continue;
      make_monic(h);
      if (h.front().first.degree() == 0) return false;
      unsigned deg = 0;
      for (const auto& [m, c] : h) deg = std::max(deg, m.degree());
      if (deg > limits_.max_degree) throw ResourceLimit("Groebner basis: degree limit exceeded");
      update(std::move(h));
    }
    return true;
  }

  std::vector<Terms> reduced_basis() const {
    std::vector<const Terms*> keep;
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) act.push_back(i);
    // Drop elements whose leading monomial is divisible by another one.
    for (std::size_t a : act) {
      bool redundant = false;
      for (std::size_t b : act) {
        if (a == b) continue;
        const Monomial& la = polys_[a].front().first;
        const Monomial& lb = polys_[b].front().first;
        if (lb.divides(la) && (!(la == lb) || b < a)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) keep.push_back(&polys_[a]);
    }
    std::vector<Terms> out;
    for (const Terms* t : keep) {
      std::vector<const Terms*> others;
      for (const Terms* o : keep)
        if (o != t) others.push_back(o);
      Terms tail(t->begin() + 1, t->end());
      Terms red = full_reduce(tail, others, order_);
      red.insert(red.begin(), t->front());
      out.push_back(std::move(red));
    }
    std::sort(out.begin(), out.end(),
              [&](const Terms& a, const Terms& b) { return order_.greater(a.front().first, b.front().first); });
    return out;
  }

 private:
  struct PairCmp {
    const MonomialOrder* order;
    bool operator()(const Pair& a, const Pair& b) const {
      if (order->greater(b.lcm, a.lcm)) return true;
      if (order->greater(a.lcm, b.lcm)) return false;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    }
  };

  std::vector<const Terms*> active_list() const {
    std::vector<const Terms*> out;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) out.push_back(&polys_[i]);
    return out;
  }

  const Monomial& lm(std::size_t i) const { return polys_[i].front().first; }

  // Gebauer-Moeller update with the product and chain criteria.
  void update(Terms h) {
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(false);
    const Monomial& lh = lm(hi);

    std::vector<Pair> c;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) c.push_back({g, hi, lm(g).lcm(lh)});

    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const Pair& p = c[a];
      bool keep = lh.coprime(lm(p.i));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < c.size() && keep; ++b)
          if (c[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < d.size() && keep; ++b)
          if (d[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> e;
    for (const Pair& p : d)
      if (!lh.coprime(lm(p.i))) e.push_back(p);

    std::set<Pair, PairCmp> kept(PairCmp{&order_});
    for (const Pair& p : pairs_) {
      bool drop = lh.divides(p.lcm) && !(lm(p.i).lcm(lh) == p.lcm) && !(lm(p.j).lcm(lh) == p.lcm);
      if (!drop) kept.insert(p);
    }
    for (const Pair& p : e) kept.insert(p);
    pairs_ = std::move(kept);

    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && lh.divides(lm(g))) active_[g] = false;
    active_[hi] = true;
  }

  MonomialOrder order_;
  GroebnerLimits limits_;
  std::vector<Terms> polys_;
  std::vector<bool> active_;
  std::set<Pair, PairCmp> pairs_;
};

}  // namespace

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case Kind::Grevlex:
      return grevlex_greater(a, b);
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
      return false;
    case Kind::Block: {
      const std::size_t k = std::min(block, a.size());
      if (grevlex_range_greater(a, b, 0, k)) return true;
      if (grevlex_range_greater(b, a, 0, k)) return false;
      return grevlex_range_greater(a, b, k, a.size());
    }
  }
  return false;
}

GroebnerLimits& groebner_limits() {
  static GroebnerLimits limits;
  return limits;
}

GroebnerBasis::GroebnerBasis(VarList vars, MonomialOrder order, std::vector<Polynomial> basis)
    : vars_(std::move(vars)), order_(order), basis_(std::move(basis)) {
  for (const auto& b : basis_) {
    Terms t = sorted_terms(b, order_);
    make_monic(t);
    sorted_.push_back(std::move(t));
  }
}

bool GroebnerBasis::is_unit() const {
  return basis_.size() == 1 && basis_.front().is_constant() && !basis_.front().is_zero();
}

Monomial GroebnerBasis::leading_monomial(const Polynomial& p) const {
  Terms t = sorted_terms(p, order_);
  if (t.empty()) throw PolynomialError("leading monomial of zero polynomial");
  return t.front().first;
}

Polynomial GroebnerBasis::reduce(const Polynomial& f) const {
  if (!same_vars(f.vars(), vars_) && !f.is_zero())
    throw PolynomialError("reduction over a different ring");
  std::vector<const Terms*> by;
  for (const auto& t : sorted_) by.push_back(&t);
  return to_polynomial(full_reduce(sorted_terms(f, order_), by, order_), vars_);
}

GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators, const VarList& vars,
                             MonomialOrder order) {
  std::vector<Terms> inputs;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    if (!same_vars(g.vars(), vars)) throw PolynomialError("generator over a different ring");
    inputs.push_back(sorted_terms(g, order));
  }
  // Deterministic processing: smallest leading monomials first.
  std::stable_sort(inputs.begin(), inputs.end(),
                   [&](const Terms& a, const Terms& b) { return order.greater(b.front().first, a.front().first); });
  Buchberger bb(order, groebner_limits());
  if (!bb.run(std::move(inputs)))
    return GroebnerBasis(vars, order, {Polynomial::constant(vars, 1)});
  std::vector<Polynomial> basis;
  for (const auto& t : bb.reduced_basis()) basis.push_back(to_polynomial(t, vars));
  return GroebnerBasis(vars, order, std::move(basis));
}

}  // namespace resol
