#include <doctest.h>

#include <algorithm>

#include "hk/arith.hpp"
#include "hk/error.hpp"
#include "hk/random.hpp"

using namespace hk;

namespace {

const BaseField Q = BaseField::rationals();
const BaseField QT = BaseField::rational_functions();

Point pt(const BaseField& K, std::initializer_list<const char*> xs) {
  Point p;
  for (const char* x : xs) p.push_back(parse_elem(K, x));
  return p;
}

// Height over k(t) from a polynomial lift: max degree minus the degree of the gcd.
int ff_height_oracle(const Point& x) {
  uint64_t p = x[0].p();
  UPoly l = UPoly::constant(p, 1);
  for (const auto& c : x)
    if (!c.is_zero()) l = l / gcd(l, c.den()) * c.den();
  std::vector<UPoly> v;
  UPoly g(p);
  for (const auto& c : x) {
    v.push_back(c.is_zero() ? UPoly(p) : c.num() * (l / c.den()));
    g = gcd(g, v.back());
  }
  int top = 0;
  for (const auto& f : v)
    if (!f.is_zero()) top = std::max(top, f.deg());
  return top - g.deg();
}

// log max |a_i| of the primitive integer lift.
Interval q_height_oracle(const Point& x) {
  mpz_class l = 1, g = 0, top = 0;
  for (const auto& c : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.constant_value().get_den_mpz_t());
  std::vector<mpz_class> v;
  for (const auto& c : x) {
    mpq_class s = c.constant_value() * l;
    v.push_back(s.get_num());
    g = gcd(g, v.back());
  }
  for (const auto& a : v) top = std::max(top, mpz_class(abs(a) / g));
  return Interval::log_of(top);
}

}  // namespace

TEST_CASE("local absolute values") {
  Place pi = Place::irreducible(UPoly::var(0));
  CHECK(log_abs(QT, pi, parse_elem(QT, "t^2")).exact() == -2);
  CHECK(valuation(pi, parse_elem(QT, "t^2")) == 2);
  CHECK(log_abs(QT, Place::infinity(), parse_elem(QT, "t+1")).exact() == 1);
  HeightValue a = log_abs(Q, Place::archimedean(), parse_elem(Q, "-3/2"));
  CHECK(a.interval().overlaps(Interval::log_of(mpq_class(3, 2))));
  CHECK(log_abs(Q, Place::finite_prime(2), parse_elem(Q, "12")).interval().overlaps(-Interval::log_of(mpz_class(4))));
  CHECK_THROWS_AS(log_abs(Q, Place::archimedean(), Elem::zero(0)), Error);
}

TEST_CASE("product formula on fixed elements") {
  CHECK(product_formula_check(QT, parse_elem(QT, "t/(t+1)")));
  CHECK(product_formula_check(Q, parse_elem(Q, "6/35")));
  HeightValue s;
  CHECK(product_formula_check(QT, parse_elem(QT, "7/3"), &s));
  CHECK(s.exact() == 0);
  CHECK(support(QT, parse_elem(QT, "7/3")).size() == 1);  // only the infinite place
  BaseField F5 = BaseField::finite_functions(5);
  CHECK(product_formula_check(F5, parse_elem(F5, "(t^3+2)/(t^2+t+1)")));
}

TEST_CASE("Weil heights of fixed points") {
  CHECK(weil_height(Q, pt(Q, {"1", "1"})).interval().contains_zero());
  CHECK(weil_height(Q, pt(Q, {"2", "3"})).interval().overlaps(Interval::log_of(mpz_class(3))));
  CHECK(weil_height(QT, pt(QT, {"t", "t+1"})).exact() == 1);
  CHECK(vector_height(Q, pt(Q, {"1", "-1", "1"})).interval().contains_zero());
  CHECK(vector_height(Q, pt(Q, {"2", "1"})).interval().overlaps(Interval::log_of(mpz_class(2))));
  CHECK(vector_height(QT, pt(QT, {"t^2", "t", "1"})).exact() == 2);
  CHECK_THROWS_AS(weil_height(Q, pt(Q, {"0", "0"})), Error);
}

TEST_CASE("Weil height against the lift oracles") {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    Point x = random_point(rng, QT, 3, 20, 4);
    for (auto& c : x) c /= random_function(rng, QT, 2, 5);
    CHECK(weil_height(QT, x).exact() == ff_height_oracle(x));
    CHECK(weil_height_by_places(QT, x).exact() == ff_height_oracle(x));
    Point y = random_point(rng, Q, 2, 1000);
    y[0] /= Elem(0, mpq_class(static_cast<long>(rand_range(rng, 1, 50))));
    Interval o = q_height_oracle(y);
    CHECK(weil_height(Q, y).interval().overlaps(o));
    CHECK(weil_height_by_places(Q, y).interval().overlaps(o));
  }
}

TEST_CASE("Weil height is invariant under scaling and permutation") {
  Rng rng(22);
  BaseField F7 = BaseField::finite_functions(7);
  for (const BaseField& K : {QT, F7}) {
    for (int i = 0; i < 30; ++i) {
      Point x = random_point(rng, K, 2, 6, 3);
      Elem lam = random_function(rng, K, 4, 6);
      Point y = x;
      for (auto& c : y) c *= lam;
      std::reverse(y.begin(), y.end());
      CHECK(weil_height(K, x).exact() == weil_height(K, y).exact());
      CHECK(weil_height(K, x).exact() >= 0);
    }
  }
}

TEST_CASE("canonical representatives") {
  Point x = pt(QT, {"2*t", "4*t^2", "0"});
  Point c = canonical_representative(QT, x);
  CHECK(projectively_equal(x, c));
  CHECK(canonical_representative(QT, c) == c);
  Point s = x;
  for (auto& e : s) e *= parse_elem(QT, "(t+3)/5");
  CHECK(canonical_representative(QT, s) == c);
  CHECK(primitive_integer_vector(pt(Q, {"1/2", "-1/3"})) == std::vector<mpz_class>{3, -2});
}
