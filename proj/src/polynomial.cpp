#include "resol/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace resol {

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const VarList& a, const VarList& b) {
  if (a == b) return true;
  if (!a || !b) return (!a || a->empty()) && (!b || b->empty());
  return *a == *b;
}

// ---------------------------------------------------------------- Monomial

unsigned Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(r.exps_[i], other.exps_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// ---------------------------------------------------------------- Rational I/O

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw PolynomialError("malformed rational '" + text + "'");
  if (q.get_den() == 0) throw PolynomialError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(VarList vars) : vars_(std::move(vars)) {}

Polynomial::Polynomial(VarList vars, TermMap terms) : vars_(std::move(vars)) {
  for (auto& [m, c] : terms) {
    if (c == 0) continue;
    c.canonicalize();
    terms_.emplace(m, c);
  }
}

Polynomial Polynomial::constant(VarList vars, const Rational& c) {
  Polynomial p(vars);
  if (c != 0) p.terms_.emplace(Monomial(p.nvars()), c).first->second.canonicalize();
  return p;
}

Polynomial Polynomial::variable(VarList vars, std::size_t index) {
  Polynomial p(vars);
  if (index >= p.nvars()) throw PolynomialError("variable index out of range");
  Monomial m(p.nvars());
  m[index] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

Polynomial Polynomial::variable(VarList vars, const std::string& name) {
  Polynomial p(vars);
  return variable(vars, p.var_index(name));
}

Polynomial Polynomial::monomial(VarList vars, Monomial m, const Rational& c) {
  Polynomial p(vars);
  if (m.size() != p.nvars()) throw PolynomialError("monomial size mismatch");
  if (c != 0) p.terms_.emplace(std::move(m), c).first->second.canonicalize();
  return p;
}

std::size_t Polynomial::var_index(const std::string& name) const {
  if (vars_) {
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it != vars_->end()) return static_cast<std::size_t>(it - vars_->begin());
  }
  throw PolynomialError("unknown variable '" + name + "'");
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

Rational Polynomial::constant_term() const {
  return coefficient(Monomial(nvars()));
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw PolynomialError("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw PolynomialError("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::optional<unsigned> Polynomial::order() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.degree();
}

std::optional<unsigned> Polynomial::order_at(const Point& a) const {
  if (a.size() != nvars()) throw PolynomialError("point dimension does not match variable count");
  return translate(a).order();
}

std::optional<unsigned> Polynomial::order_along(std::span<const std::size_t> indices) const {
  std::optional<unsigned> best;
  for (const auto& [m, c] : terms_) {
    unsigned d = 0;
    for (std::size_t i : indices) d += m[i];
    if (!best || d < *best) best = d;
  }
  return best;
}

unsigned Polynomial::degree_in(std::size_t index) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m[index]);
  return d;
}

bool Polynomial::involves(std::size_t index) const { return degree_in(index) > 0; }

Rational Polynomial::evaluate(const Point& a) const {
  if (a.size() != nvars()) throw PolynomialError("point dimension does not match variable count");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), a[i].get_num_mpz_t(), m[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), a[i].get_den_mpz_t(), m[i]);
      t *= pw;
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::translate(const Point& a) const {
  if (a.size() != nvars()) throw PolynomialError("point dimension does not match variable count");
  if (std::all_of(a.begin(), a.end(), [](const Rational& q) { return q == 0; })) return *this;
  std::vector<Polynomial> images;
  images.reserve(nvars());
  for (std::size_t i = 0; i < nvars(); ++i)
    images.push_back(variable(vars_, i) + constant(vars_, a[i]));
  return compose(images);
}

Polynomial Polynomial::derivative(std::size_t index) const {
  if (index >= nvars()) throw PolynomialError("unknown variable in derivative");
  Polynomial r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[index] == 0) continue;
    Monomial d(m);
    d[index] -= 1;
    r.add_term(d, c * m[index]);
  }
  return r;
}

Polynomial Polynomial::derivative(const std::vector<Exponent>& multi_index) const {
  Polynomial r = *this;
  for (std::size_t i = 0; i < multi_index.size(); ++i)
    for (Exponent k = 0; k < multi_index[i]; ++k) r = r.derivative(i);
  return r;
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const {
  if (images.size() != nvars()) throw PolynomialError("substitution size mismatch");
  VarList target = images.empty() ? vars_ : images.front().vars();
  for (const auto& img : images)
    if (!same_vars(img.vars(), target)) throw PolynomialError("substitution images over different rings");
  std::vector<std::vector<Polynomial>> powers(nvars());
  auto power_of = [&](std::size_t i, Exponent e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t = t * power_of(i, m[i]);
    r += t;
  }
  return r;
}

Polynomial Polynomial::specialize(std::size_t index, const Rational& value) const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars(); ++i)
    if (i != index) names.push_back((*vars_)[i]);
  VarList smaller = make_vars(std::move(names));
  Polynomial r(smaller);
  for (const auto& [m, c] : terms_) {
    std::vector<Exponent> e;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != index) e.push_back(m[i]);
    Rational pw;
    mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), m[index]);
    mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), m[index]);
    r.add_term(Monomial(std::move(e)), c * pw);
  }
  return r;
}

std::vector<Polynomial> Polynomial::expand_in(std::size_t index) const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars(); ++i)
    if (i != index) names.push_back((*vars_)[i]);
  VarList smaller = make_vars(std::move(names));
  std::vector<Polynomial> coeffs(degree_in(index) + 1, Polynomial(smaller));
  for (const auto& [m, c] : terms_) {
    std::vector<Exponent> e;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != index) e.push_back(m[i]);
    coeffs[m[index]].add_term(Monomial(std::move(e)), c);
  }
  return coeffs;
}

Polynomial Polynomial::with_vars(VarList vars) const {
  if (!vars || vars->size() != nvars()) throw PolynomialError("variable list size mismatch");
  Polynomial r(std::move(vars));
  r.terms_ = terms_;
  return r;
}

Polynomial Polynomial::embed(VarList vars, std::span<const std::size_t> position) const {
  Polynomial r(vars);
  for (const auto& [m, c] : terms_) {
    Monomial e(r.nvars());
    for (std::size_t i = 0; i < m.size(); ++i) e[position[i]] += m[i];
    r.add_term(e, c);
  }
  return r;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (!vars_) vars_ = o.vars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (!vars_) vars_ = o.vars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.vars_ ? a.vars_ : b.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading_coefficient();
  return *this * inv;
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& q) const {
  if (q.is_zero()) throw PolynomialError("division by zero polynomial");
  Polynomial rem = *this;
  Polynomial quot(vars_);
  const Monomial& lq = q.leading_monomial();
  const Rational& cq = q.leading_coefficient();
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    if (!lq.divides(lr)) return std::nullopt;
    Polynomial t = monomial(vars_, lr / lq, rem.leading_coefficient() / cq);
    quot += t;
    rem -= t * q;
  }
  return quot;
}

Polynomial Polynomial::exact_divide(const Polynomial& q) const {
  auto r = try_divide(q);
  if (!r) throw NotDivisible();
  return *r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.terms_ == b.terms_ && (a.is_zero() && b.is_zero() ? true : same_vars(a.vars_, b.vars_));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.degree() == 0 || mag != 1) {
      out << rational_to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << "*";
      out << (*vars_)[i];
      if (m[i] > 1) out << "^" << m[i];
      wrote = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(const std::string& text, const VarList& vars) : s_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    skip();
    Polynomial acc(vars_);
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Polynomial t = term();
    acc += negate ? -t : t;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        ++pos_;
        skip();
        Integer d = integer_literal();
        if (d == 0) fail("division by zero");
        acc *= Rational(1, 1) / Rational(d);
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Integer integer_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return Integer(s_.substr(start, pos_ - start));
  }

  unsigned exponent() {
    if (!peek('^')) return 1;
    ++pos_;
    skip();
    std::size_t start = pos_;
    Integer e = integer_literal();
    if (e > 100000) {
      pos_ = start;
      fail("exponent too large");
    }
    return static_cast<unsigned>(e.get_ui());
  }

  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    Polynomial base(vars_);
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
    } else if (c == '-') {
      ++pos_;
      return -factor();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q(integer_literal());
      // A literal a/b binds as one rational coefficient.
      std::size_t save = pos_;
      if (peek('/')) {
        ++pos_;
        skip();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          Integer d = integer_literal();
          if (d == 0) fail("division by zero");
          q /= Rational(d);
        } else {
          pos_ = save;
        }
      }
      base = Polynomial::constant(vars_, q);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(vars_->begin(), vars_->end(), name);
      if (it == vars_->end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      base = Polynomial::variable(vars_, static_cast<std::size_t>(it - vars_->begin()));
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    return base.pow(exponent());
  }

  const std::string& s_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, const VarList& vars) {
  return Parser(text, vars).parse();
}

// ---------------------------------------------------------------- SubstitutionMap

std::string to_string(SubstitutionKind kind) {
  switch (kind) {
    case SubstitutionKind::BlowupChart: return "blowup-chart";
    case SubstitutionKind::TriangularAutomorphism: return "triangular-automorphism";
    case SubstitutionKind::Translation: return "translation";
  }
  return "?";
}

SubstitutionMap::SubstitutionMap(VarList source, VarList target, std::vector<Polynomial> images,
                                 SubstitutionKind kind)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), kind_(kind) {
  if (images_.size() != source_->size()) throw PolynomialError("substitution needs one image per variable");
  for (auto& img : images_) {
    if (img.vars() == nullptr) img = Polynomial(target_);
    if (!same_vars(img.vars(), target_)) throw PolynomialError("substitution image over wrong ring");
    img = img.with_vars(target_);
  }
}

SubstitutionMap SubstitutionMap::identity(VarList vars) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < vars->size(); ++i) images.push_back(Polynomial::variable(vars, i));
  return SubstitutionMap(vars, vars, std::move(images), SubstitutionKind::TriangularAutomorphism);
}

bool SubstitutionMap::is_identity() const {
  if (!same_vars(source_, target_)) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!(images_[i] == Polynomial::variable(target_, i))) return false;
  return true;
}

Polynomial SubstitutionMap::apply(const Polynomial& p) const {
  if (!same_vars(p.vars(), source_)) {
    if (p.is_zero()) return Polynomial(target_);
    throw PolynomialError("substitution applied to polynomial over another ring");
  }
  return p.compose(images_);
}

SubstitutionMap SubstitutionMap::then(const SubstitutionMap& next) const {
  std::vector<Polynomial> composed;
  composed.reserve(images_.size());
  for (const auto& img : images_) composed.push_back(next.apply(img));
  SubstitutionKind k = kind_ == next.kind_ ? kind_ : SubstitutionKind::BlowupChart;
  return SubstitutionMap(source_, next.target_, std::move(composed), k);
}

SubstitutionMap SubstitutionMap::inverse() const {
  if (kind_ == SubstitutionKind::BlowupChart && !is_identity())
    throw PolynomialError("blowup chart maps are not invertible");
  const std::size_t n = images_.size();
  if (target_->size() != n) throw PolynomialError("map between rings of different size");
  // image_i = c_i * y_i + h_i, with h_i free of y_i and the dependency graph acyclic.
  std::vector<Rational> lead(n);
  std::vector<Polynomial> tails;
  for (std::size_t i = 0; i < n; ++i) {
    Monomial yi(n);
    yi[i] = 1;
    lead[i] = images_[i].coefficient(yi);
    Polynomial tail = images_[i] - Polynomial::monomial(target_, yi, lead[i]);
    if (lead[i] == 0 || tail.involves(i)) throw PolynomialError("map is not triangular");
    tails.push_back(std::move(tail));
  }
  // x_i = c_i y_i + h_i(y)  =>  y_i = (x_i - h_i(y)) / c_i, solved in dependency order.
  std::vector<std::optional<Polynomial>> inv(n);
  std::vector<int> state(n, 0);
  auto solve = [&](auto&& self, std::size_t i) -> const Polynomial& {
    if (inv[i]) return *inv[i];
    if (state[i] == 1) throw PolynomialError("map is not triangular (cyclic dependency)");
    state[i] = 1;
    std::vector<Polynomial> sub;
    for (std::size_t j = 0; j < n; ++j) {
      if (tails[i].involves(j))
        sub.push_back(self(self, j));
      else
        sub.push_back(Polynomial::variable(source_, j));
    }
    Polynomial h = tails[i].with_vars(target_).compose(sub);
    inv[i] = (Polynomial::variable(source_, i) - h) * (Rational(1) / lead[i]);
    state[i] = 2;
    return *inv[i];
  };
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(solve(solve, i));
  return SubstitutionMap(target_, source_, std::move(images), kind_);
}

}  // namespace resol
