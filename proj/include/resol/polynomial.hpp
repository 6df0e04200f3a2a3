// Sparse multivariate polynomials over the rationals.
//
// Every polynomial carries its ordered variable list. Terms are kept in a map
// ordered by the graded reverse-lexicographic order (largest first), so
// iteration and printing are deterministic.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace resol {

using Rational = mpq_class;
using Integer = mpz_class;
using Exponent = std::uint32_t;

using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);
bool same_vars(const VarList& a, const VarList& b);

class PolynomialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotDivisible : public PolynomialError {
 public:
  NotDivisible() : PolynomialError("not divisible") {}
};

class ParseError : public PolynomialError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : PolynomialError(what + " at column " + std::to_string(column + 1)),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }

  unsigned degree() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(*this) on the argument.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

/// Graded reverse-lex, returns true when a is strictly larger than b.
bool grevlex_greater(const Monomial& a, const Monomial& b);

struct GrevlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_greater(a, b); }
};

using Point = std::vector<Rational>;

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrevlexDesc>;

  Polynomial() = default;
  explicit Polynomial(VarList vars);
  Polynomial(VarList vars, TermMap terms);

  static Polynomial constant(VarList vars, const Rational& c);
  static Polynomial variable(VarList vars, std::size_t index);
  static Polynomial variable(VarList vars, const std::string& name);
  static Polynomial monomial(VarList vars, Monomial m, const Rational& c = 1);

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
  std::size_t var_index(const std::string& name) const;
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  unsigned total_degree() const;
  /// Lowest total degree of the support, i.e. the order at the origin.
  std::optional<unsigned> order() const;
  /// Order at a rational point; nullopt means infinity (the zero polynomial).
  std::optional<unsigned> order_at(const Point& a) const;
  /// Minimum, over the support, of the total degree in the given variables.
  std::optional<unsigned> order_along(std::span<const std::size_t> indices) const;
  unsigned degree_in(std::size_t index) const;
  bool involves(std::size_t index) const;

  Rational evaluate(const Point& a) const;
  /// p(x + a): moves the point a to the origin.
  Polynomial translate(const Point& a) const;
  Polynomial derivative(std::size_t index) const;
  Polynomial derivative(const std::vector<Exponent>& multi_index) const;

  /// Replaces every variable i by images[i]; images share one variable list.
  Polynomial compose(std::span<const Polynomial> images) const;
  /// Sets variable `index` to a constant and removes it from the variable list.
  Polynomial specialize(std::size_t index, const Rational& value) const;
  /// Coefficients a_j with p = sum_j a_j * x_index^j, each in the ring without x_index.
  std::vector<Polynomial> expand_in(std::size_t index) const;
  /// Same polynomial over another variable list with the same size.
  Polynomial with_vars(VarList vars) const;
  /// Embeds into a larger ring; position[i] is the new index of variable i.
  Polynomial embed(VarList vars, std::span<const std::size_t> position) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial pow(unsigned e) const;
  /// Scales so the leading coefficient (grevlex) is one; zero stays zero.
  Polynomial monic() const;

  /// Exact quotient p / q; throws NotDivisible when q does not divide p.
  Polynomial exact_divide(const Polynomial& q) const;
  std::optional<Polynomial> try_divide(const Polynomial& q) const;

  std::string to_string() const;
  static Polynomial parse(const std::string& text, const VarList& vars);

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void add_term(const Monomial& m, const Rational& c);

  VarList vars_;
  TermMap terms_;
};

std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& text);

enum class SubstitutionKind { BlowupChart, TriangularAutomorphism, Translation };

std::string to_string(SubstitutionKind kind);

/// A ring map sending each source variable to a polynomial in the target variables.
class SubstitutionMap {
 public:
  SubstitutionMap() = default;
  SubstitutionMap(VarList source, VarList target, std::vector<Polynomial> images,
                  SubstitutionKind kind);

  static SubstitutionMap identity(VarList vars);

  const VarList& source() const { return source_; }
  const VarList& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }
  SubstitutionKind kind() const { return kind_; }
  bool is_identity() const;

  Polynomial apply(const Polynomial& p) const;
  /// (this then next): first substitute by this map, then by next.
  SubstitutionMap then(const SubstitutionMap& next) const;
  /// Inverse of a triangular or translation map; throws for non-invertible maps.
  SubstitutionMap inverse() const;

 private:
  VarList source_;
  VarList target_;
  std::vector<Polynomial> images_;
  SubstitutionKind kind_ = SubstitutionKind::TriangularAutomorphism;
};

}  // namespace resol
