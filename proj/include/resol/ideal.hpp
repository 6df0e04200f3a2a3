// Finitely generated ideals of Q[x_1..x_n] and the ideal-theoretic toolbox
// used by the resolution algorithm.
#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resol/groebner.hpp"
#include "resol/polynomial.hpp"

namespace resol {

class Ideal {
 public:
  Ideal() = default;
  /// Zero generators are dropped; no generators means the zero ideal.
  Ideal(VarList vars, std::vector<Polynomial> generators);
  Ideal(VarList vars, std::initializer_list<Polynomial> generators)
      : Ideal(std::move(vars), std::vector<Polynomial>(generators)) {}

  static Ideal unit(VarList vars) { return Ideal(vars, {Polynomial::constant(vars, 1)}); }
  static Ideal zero(VarList vars) { return Ideal(std::move(vars), std::vector<Polynomial>{}); }
  static Ideal parse(const std::vector<std::string>& generators, const VarList& vars);

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  /// Reduced grevlex basis, computed once and shared by copies.
  const GroebnerBasis& groebner() const;
  GroebnerBasis groebner(MonomialOrder order) const;

  bool is_zero() const { return gens_.empty(); }
  bool is_trivial() const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  bool equals(const Ideal& other) const { return contains(other) && other.contains(*this); }
  /// f in the radical of this ideal.
  bool radical_contains(const Polynomial& f) const;
  /// Same ideal generated by its reduced grevlex basis.
  Ideal reduced() const;

  Ideal operator+(const Ideal& other) const;
  Ideal operator*(const Ideal& other) const;
  Ideal pow(unsigned e) const;

  /// (I : f^infinity).
  Ideal saturate(const Polynomial& f) const;
  /// Intersection with the subring in the variables after the first k.
  Ideal eliminate_first(std::size_t k) const;

  /// I + all first partial derivatives of the generators.
  Ideal delta() const;
  /// Delta applied b times, simplified through Groebner bases between steps.
  Ideal delta_power(unsigned b) const;

  /// Largest b with Delta^{b-1}(I) non-trivial. Throws for the zero and unit ideal.
  struct MaxOrder;
  MaxOrder max_order() const;

  std::optional<unsigned> order() const;
  std::optional<unsigned> order_at(const Point& a) const;
  std::optional<unsigned> order_along(std::span<const std::size_t> z) const;

  struct Smoothness;
  Smoothness smoothness_check(unsigned codim) const;

  Ideal map(const SubstitutionMap& m) const;
  Ideal translate(const Point& a) const;
  Ideal with_vars(VarList vars) const;
  Ideal embed(VarList vars, std::span<const std::size_t> position) const;

  /// Krull dimension and a lex-first maximal independent set of variables.
  std::size_t dimension() const;
  std::vector<std::size_t> independent_set() const;
  /// Every independent set of maximal size, in lex order.
  std::vector<std::vector<std::size_t>> independent_sets() const;

  struct Points {
    std::vector<Point> points;
    bool irrational = false;  // some solutions were not rational
  };
  /// All solutions of a zero-dimensional ideal that are rational.
  Points rational_points() const;

  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag once;
    GroebnerBasis gb;
  };

  VarList vars_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct Ideal::MaxOrder {
  unsigned order;
  Ideal locus;
};

struct Ideal::Smoothness {
  bool smooth;
  Ideal witness;
};

/// Determinant by cofactor expansion; matrices here are at most 4x4.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const VarList& vars);

/// All k x k minors of the Jacobian of the given polynomials.
std::vector<Polynomial> jacobian_minors(const std::vector<Polynomial>& polys, unsigned k,
                                        const VarList& vars);

/// All subsets of {0..n-1} of size k in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

struct RootSet {
  std::vector<Rational> roots;  // distinct, ascending
  bool irrational = false;      // other (non-rational) roots exist
};

/// Rational roots of a polynomial involving only the given variable.
RootSet univariate_rational_roots(const Polynomial& p, std::size_t var);

}  // namespace resol
