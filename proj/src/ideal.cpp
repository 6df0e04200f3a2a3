#include "resol/ideal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace resol {

namespace {

std::string fresh_name(const VarList& vars, const std::string& base) {
  std::string name = base;
  while (std::find(vars->begin(), vars->end(), name) != vars->end()) name += "_";
  return name;
}

// The ring with one auxiliary variable prepended, and the positions of the old variables.
std::pair<VarList, std::vector<std::size_t>> with_aux_variable(const VarList& vars) {
  std::vector<std::string> names{fresh_name(vars, "_t")};
  names.insert(names.end(), vars->begin(), vars->end());
  std::vector<std::size_t> pos(vars->size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i + 1;
  return {make_vars(std::move(names)), std::move(pos)};
}

Polynomial drop_leading(const Polynomial& p, std::size_t k, const VarList& target) {
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Exponent> e(m.exponents().begin() + static_cast<std::ptrdiff_t>(k), m.exponents().end());
    terms.emplace(Monomial(std::move(e)), c);
  }
  return Polynomial(target, std::move(terms));
}

bool is_monomial(const Polynomial& p) { return p.term_count() == 1; }

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, unsigned>> factors;
  Integer d = 2;
  unsigned long steps = 0;
  while (d * d <= n) {
    if (++steps > 10000000UL) throw ResourceLimit("rational root search: coefficient too large to factor");
    if (n % d == 0) {
      unsigned e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      factors.emplace_back(d, e);
    }
    d += (d == 2) ? 1 : 2;
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factors) {
    std::size_t sz = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational horner(const std::vector<Rational>& a, const Rational& x) {
  Rational v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * x + a[i];
  return v;
}

// Divides a (ascending coefficients) by (x - r); requires a(r) = 0.
std::vector<Rational> deflate(const std::vector<Rational>& a, const Rational& r) {
  std::vector<Rational> q(a.size() - 1);
  Rational carry = 0;
  for (std::size_t i = a.size(); i-- > 1;) {
    carry = carry * r + a[i];
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace

Ideal::Ideal(VarList vars, std::vector<Polynomial> generators) : vars_(std::move(vars)) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    if (!same_vars(g.vars(), vars_)) throw PolynomialError("generator over a different ring");
    if (g.is_constant()) {
      gens_.assign(1, Polynomial::constant(vars_, 1));
      return;
    }
    Polynomial h = g.vars() == vars_ ? std::move(g) : g.with_vars(vars_);
    if (std::find(gens_.begin(), gens_.end(), h) == gens_.end()) gens_.push_back(std::move(h));
  }
}

Ideal Ideal::parse(const std::vector<std::string>& generators, const VarList& vars) {
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(Polynomial::parse(g, vars));
  return Ideal(vars, std::move(gens));
}

const GroebnerBasis& Ideal::groebner() const {
  std::call_once(cache_->once, [this] { cache_->gb = groebner_basis(gens_, vars_); });
  return cache_->gb;
}

GroebnerBasis Ideal::groebner(MonomialOrder order) const {
  if (order == MonomialOrder::grevlex()) return groebner();
  return groebner_basis(gens_, vars_, order);
}

bool Ideal::is_trivial() const {
  if (gens_.size() == 1 && gens_.front().is_constant()) return true;
  for (const auto& g : gens_)
    if (g.is_constant()) return true;
  return groebner().is_unit();
}

bool Ideal::contains(const Polynomial& f) const {
  if (f.is_zero()) return true;
  if (is_zero()) return false;
  return groebner().contains(f.vars() == vars_ ? f : f.with_vars(vars_));
}

bool Ideal::contains(const Ideal& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const Polynomial& g) { return contains(g); });
}

bool Ideal::radical_contains(const Polynomial& f) const {
  if (f.is_zero() || contains(f)) return true;
  if (is_zero()) return false;
  auto [big, pos] = with_aux_variable(vars_);
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(g.embed(big, pos));
  gens.push_back(Polynomial::constant(big, 1) - Polynomial::variable(big, 0) * f.embed(big, pos));
  return Ideal(big, std::move(gens)).is_trivial();
}

Ideal Ideal::reduced() const {
  Ideal r(vars_, groebner().elements());
  std::call_once(r.cache_->once, [&] { r.cache_->gb = groebner(); });
  return r;
}

Ideal Ideal::operator+(const Ideal& other) const {
  std::vector<Polynomial> gens = gens_;
  gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
  return Ideal(vars_, std::move(gens));
}

Ideal Ideal::operator*(const Ideal& other) const {
  std::vector<Polynomial> gens;
  for (const auto& a : gens_)
    for (const auto& b : other.gens_) gens.push_back(a * b);
  return Ideal(vars_, std::move(gens));
}

Ideal Ideal::pow(unsigned e) const {
  if (e == 0) return unit(vars_);
  if (gens_.size() == 1) return Ideal(vars_, {gens_.front().pow(e)});
  Ideal result = *this;
  for (unsigned k = 1; k < e; ++k) {
    result = result * *this;
    if (result.gens_.size() > 8) result = result.reduced();
  }
  return result;
}

Ideal Ideal::eliminate_first(std::size_t k) const {
  std::vector<std::string> names(vars_->begin() + static_cast<std::ptrdiff_t>(k), vars_->end());
  VarList target = make_vars(std::move(names));
  GroebnerBasis gb = groebner(MonomialOrder::elimination(k));
  std::vector<Polynomial> kept;
  for (const auto& g : gb.elements()) {
    bool free = true;
    for (std::size_t i = 0; i < k && free; ++i) free = !g.involves(i);
    if (free) kept.push_back(drop_leading(g, k, target));
  }
  return Ideal(target, std::move(kept));
}

Ideal Ideal::saturate(const Polynomial& f) const {
  if (f.is_zero()) throw PolynomialError("saturation by the zero polynomial");
  if (f.is_constant() || is_zero()) return *this;
  if (gens_.size() == 1 && is_monomial(f)) {
    Polynomial g = gens_.front();
    const Monomial& m = f.leading_monomial();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Polynomial x = Polynomial::variable(vars_, i);
      while (auto q = g.try_divide(x)) g = std::move(*q);
    }
    return Ideal(vars_, {g});
  }
  auto [big, pos] = with_aux_variable(vars_);
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(g.embed(big, pos));
  gens.push_back(Polynomial::constant(big, 1) - Polynomial::variable(big, 0) * f.embed(big, pos));
  Ideal elim = Ideal(big, std::move(gens)).eliminate_first(1);
  return elim.with_vars(vars_);
}

Ideal Ideal::delta() const {
  std::vector<Polynomial> gens = gens_;
  for (const auto& g : gens_)
    for (std::size_t i = 0; i < nvars(); ++i) gens.push_back(g.derivative(i));
  return Ideal(vars_, std::move(gens));
}

Ideal Ideal::delta_power(unsigned b) const {
  Ideal r = *this;
  for (unsigned k = 0; k < b; ++k) {
    if (r.is_trivial()) return unit(vars_);
    r = r.delta().reduced();
  }
  return r;
}

Ideal::MaxOrder Ideal::max_order() const {
  if (is_zero()) throw PolynomialError("zero ideal");
  if (is_trivial()) throw PolynomialError("unit ideal");
  unsigned b = 1;
  Ideal locus = reduced();
  for (;;) {
    Ideal next = locus.delta().reduced();
    if (next.is_trivial()) return {b, locus};
    locus = std::move(next);
    ++b;
  }
}

std::optional<unsigned> Ideal::order() const {
  std::optional<unsigned> best;
  for (const auto& g : gens_) {
    auto o = g.order();
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

std::optional<unsigned> Ideal::order_at(const Point& a) const {
  if (a.size() != nvars()) throw PolynomialError("point dimension does not match variable count");
  std::optional<unsigned> best;
  for (const auto& g : gens_) {
    auto o = g.order_at(a);
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

std::optional<unsigned> Ideal::order_along(std::span<const std::size_t> z) const {
  for (std::size_t i : z)
    if (i >= nvars()) throw PolynomialError("center variable outside the ring");
  std::optional<unsigned> best;
  for (const auto& g : gens_) {
    auto o = g.order_along(z);
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

Ideal::Smoothness Ideal::smoothness_check(unsigned codim) const {
  Ideal witness = *this + Ideal(vars_, jacobian_minors(gens_, codim, vars_));
  return {witness.is_trivial(), witness};
}

Ideal Ideal::map(const SubstitutionMap& m) const {
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(m.apply(g));
  return Ideal(m.target(), std::move(gens));
}

Ideal Ideal::translate(const Point& a) const {
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(g.translate(a));
  return Ideal(vars_, std::move(gens));
}

Ideal Ideal::with_vars(VarList vars) const {
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(g.with_vars(vars));
  return Ideal(std::move(vars), std::move(gens));
}

Ideal Ideal::embed(VarList vars, std::span<const std::size_t> position) const {
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(g.embed(vars, position));
  return Ideal(std::move(vars), std::move(gens));
}

std::vector<std::vector<std::size_t>> Ideal::independent_sets() const {
  if (is_trivial()) return {};
  std::vector<Monomial> leads;
  for (const auto& g : groebner().elements()) leads.push_back(g.leading_monomial());
  for (std::size_t k = nvars() + 1; k-- > 0;) {
    std::vector<std::vector<std::size_t>> found;
    for (const auto& s : subsets(nvars(), k)) {
      std::vector<bool> in(nvars(), false);
      for (std::size_t i : s) in[i] = true;
      bool independent = std::none_of(leads.begin(), leads.end(), [&](const Monomial& m) {
        for (std::size_t i = 0; i < m.size(); ++i)
          if (m[i] != 0 && !in[i]) return false;
        return true;
      });
      if (independent) found.push_back(s);
    }
    if (!found.empty()) return found;
  }
  return {};
}

std::vector<std::size_t> Ideal::independent_set() const {
  auto all = independent_sets();
  return all.empty() ? std::vector<std::size_t>{} : all.front();
}

std::size_t Ideal::dimension() const { return independent_set().size(); }

Ideal::Points Ideal::rational_points() const {
  Points out;
  if (is_trivial()) return out;
  if (nvars() == 0) {
    out.points.push_back({});
    return out;
  }
  if (dimension() != 0) throw PolynomialError("rational_points needs a zero-dimensional ideal");
  GroebnerBasis gb = groebner(MonomialOrder::lex());
  const std::size_t last = nvars() - 1;
  const Polynomial* uni = nullptr;
  for (const auto& g : gb.elements()) {
    bool only_last = true;
    for (std::size_t i = 0; i < last && only_last; ++i) only_last = !g.involves(i);
    if (only_last) uni = &g;
  }
  if (uni == nullptr) throw PolynomialError("zero-dimensional ideal without eliminant");
  RootSet roots = univariate_rational_roots(*uni, last);
  out.irrational = roots.irrational;
  for (const Rational& r : roots.roots) {
    std::vector<Polynomial> gens;
    VarList sub_vars;
    for (const auto& g : gb.elements()) {
      Polynomial s = g.specialize(last, r);
      if (!sub_vars) sub_vars = s.vars();
      gens.push_back(s.with_vars(sub_vars));
    }
    Points rest = Ideal(sub_vars, std::move(gens)).rational_points();
    out.irrational = out.irrational || rest.irrational;
    for (auto& p : rest.points) {
      p.push_back(r);
      out.points.push_back(std::move(p));
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::string Ideal::to_string() const {
  if (gens_.empty()) return "(0)";
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) out << (i ? ", " : "") << gens_[i].to_string();
  out << ")";
  return out.str();
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const VarList& vars) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(vars, 1);
  if (n == 1) return m[0][0];
  Polynomial det(vars);
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][col] * determinant(minor, vars);
    if (col % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

std::vector<Polynomial> jacobian_minors(const std::vector<Polynomial>& polys, unsigned k,
                                        const VarList& vars) {
  std::vector<Polynomial> out;
  const std::size_t n = vars->size();
  if (k == 0) return {Polynomial::constant(vars, 1)};
  if (k > polys.size() || k > n) return out;
  std::vector<std::vector<Polynomial>> jac(polys.size());
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) jac[r].push_back(polys[r].derivative(c).with_vars(vars));
  for (const auto& rows : subsets(polys.size(), k)) {
    for (const auto& cols : subsets(n, k)) {
      std::vector<std::vector<Polynomial>> m;
      for (std::size_t r : rows) {
        std::vector<Polynomial> row;
        for (std::size_t c : cols) row.push_back(jac[r][c]);
        m.push_back(std::move(row));
      }
      Polynomial d = determinant(m, vars);
      if (!d.is_zero() && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

RootSet univariate_rational_roots(const Polynomial& p, std::size_t var) {
  RootSet out;
  if (p.is_zero()) throw PolynomialError("roots of the zero polynomial");
  std::vector<Rational> a(p.degree_in(var) + 1);
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != var && m[i] != 0) throw PolynomialError("polynomial is not univariate");
    a[m[var]] = c;
  }
  // Root zero.
  std::size_t low = 0;
  while (a[low] == 0) ++low;
  if (low > 0) {
    out.roots.push_back(0);
    a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (a.size() > 1) {
    // Integer coefficients with the same roots.
    Integer den = 1;
    for (const auto& c : a) den = lcm(den, Integer(c.get_den()));
    std::vector<Integer> z;
    for (const auto& c : a) z.push_back(Integer(c * den));
    std::vector<Integer> ps = divisors(z.front());
    std::vector<Integer> qs = divisors(z.back());
    std::vector<Rational> candidates;
    for (const auto& pp : ps)
      for (const auto& qq : qs) {
        Rational r(pp, qq);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      if (a.size() <= 1) break;
      if (horner(a, r) != 0) continue;
      out.roots.push_back(r);
      while (a.size() > 1 && horner(a, r) == 0) a = deflate(a, r);
    }
  }
  out.irrational = a.size() > 1;
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace resol
