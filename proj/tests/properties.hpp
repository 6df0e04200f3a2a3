// Seeded random checks of the polynomial and ideal kernels, shared by the unit
// tests and the acceptance program.
#pragma once

#include <random>
#include <string>

#include "support.hpp"

namespace testing_support {

struct PropertyResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

class RandomPolys {
 public:
  explicit RandomPolys(unsigned seed) : rng_(seed) {}

  unsigned below(unsigned n) { return static_cast<unsigned>(rng_() % n); }

  Rational coefficient() {
    long num = static_cast<long>(below(9)) - 4;
    if (num == 0) num = 1;
    return Rational(num, 1 + below(3));
  }

  // A few terms of total degree in [low, high].
  Polynomial poly(const VarList& v, unsigned low, unsigned high, unsigned terms) {
    const std::size_t n = v->size();
    Polynomial p(v);
    for (unsigned t = 0; t < terms; ++t) {
      unsigned d = low + below(high - low + 1);
      Monomial m(n);
      for (unsigned k = 0; k < d; ++k) m[below(static_cast<unsigned>(n))] += 1;
      p += Polynomial::monomial(v, m, coefficient());
    }
    return p;
  }

  Point point(std::size_t n) {
    Point a(n);
    for (auto& x : a) x = Rational(static_cast<long>(below(5)) - 2, 1 + below(2));
    return a;
  }

 private:
  std::mt19937 rng_;
};

// ord(fg) = ord f + ord g; ord(f+g) >= min, with equality when the orders differ.
inline PropertyResult order_rules(unsigned seed, int pairs) {
  RandomPolys gen(seed);
  PropertyResult r;
  auto v = vars({"x", "y", "z"});
  for (int i = 0; i < pairs; ++i) {
    Polynomial f = gen.poly(v, gen.below(3), 4, 1 + gen.below(3));
    Polynomial g = gen.poly(v, gen.below(3), 4, 1 + gen.below(3));
    if (f.is_zero() || g.is_zero()) {
      --i;
      continue;
    }
    Point a = gen.below(2) ? Point(3, 0) : gen.point(3);
    unsigned of = *f.order_at(a), og = *g.order_at(a);
    auto ofg = (f * g).order_at(a);
    r.record(ofg && *ofg == of + og, "ord(fg) for " + f.to_string() + ", " + g.to_string());
    r.record(order_by_derivatives(f, a) == static_cast<int>(of), "derivative oracle for " + f.to_string());
    auto sum = (f + g).order_at(a);
    bool ok = !sum || *sum >= std::min(of, og);
    if (of != og) ok = sum && *sum == std::min(of, og);
    r.record(ok, "ord(f+g) for " + f.to_string() + ", " + g.to_string());
  }
  return r;
}

// Delta depends only on the ideal, not on the chosen generators.
inline PropertyResult delta_generator_independence(unsigned seed, int ideals) {
  RandomPolys gen(seed);
  PropertyResult r;
  auto v = vars({"x", "y", "z"});
  for (int i = 0; i < ideals; ++i) {
    Polynomial f1 = gen.poly(v, 1, 3, 2), f2 = gen.poly(v, 1, 3, 2);
    Polynomial s = gen.poly(v, 0, 1, 2), t = gen.poly(v, 0, 1, 2);
    Ideal I(v, {f1, f2});
    Ideal J(v, {f1 + s * f2, f2, t * f1});
    if (!I.equals(J)) {
      r.record(false, "generator sets differ for " + I.to_string());
      continue;
    }
    r.record(I.delta().equals(J.delta()), "delta of " + I.to_string());
    r.record(I.delta_power(2).equals(J.delta_power(2)), "second delta of " + I.to_string());
  }
  return r;
}

// ord_a f >= b exactly when a lies on V(Delta^{b-1}(f)).
inline PropertyResult delta_locus_pointwise(unsigned seed, int polys) {
  RandomPolys gen(seed);
  PropertyResult r;
  auto v = vars({"x", "y"});
  for (int i = 0; i < polys; ++i) {
    // Singular at a chosen point c: a polynomial of order >= 2 in (x - c1, y - c2).
    Point c = gen.point(2);
    Polynomial local = gen.poly(v, 2, 4, 3);
    if (local.is_zero()) {
      --i;
      continue;
    }
    Polynomial f = local.translate(Point{-c[0], -c[1]});
    Ideal I(v, {f});
    std::vector<Point> samples{c, gen.point(2), gen.point(2), Point{0, 0}};
    for (const Point& a : samples) {
      int expected = order_by_derivatives(f, a);
      int from_delta = 0;
      for (unsigned b = 0; b <= 6; ++b) {
        Ideal D = I.delta_power(b);
        bool vanish = std::all_of(D.generators().begin(), D.generators().end(),
                                  [&](const Polynomial& g) { return g.evaluate(a) == 0; });
        if (!vanish) break;
        from_delta = static_cast<int>(b) + 1;
      }
      r.record(expected == from_delta, "delta locus of " + f.to_string());
    }
    auto mo = I.max_order();
    const int at_c = order_by_derivatives(f, c);
    bool on_locus = std::all_of(mo.locus.generators().begin(), mo.locus.generators().end(),
                                [&](const Polynomial& g) { return g.evaluate(c) == 0; });
    r.record(static_cast<int>(mo.order) >= at_c && (static_cast<int>(mo.order) != at_c || on_locus),
             "max order locus of " + f.to_string());
  }
  return r;
}

}  // namespace testing_support
