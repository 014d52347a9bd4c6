#include <doctest.h>

#include <algorithm>

#include "hk/error.hpp"
#include "hk/factor.hpp"
#include "hk/interval.hpp"
#include "hk/linalg.hpp"
#include "hk/mpoly.hpp"
#include "hk/polymat.hpp"
#include "hk/random.hpp"

using namespace hk;

namespace {
UPoly up(std::vector<mpq_class> c, uint64_t p = 0) { return UPoly(p, std::move(c)); }
}  // namespace

TEST_CASE("univariate gcd and exact division") {
  UPoly a = up({-1, 0, 1}), b = up({1, 2, 1});  // t^2 - 1, (t + 1)^2
  CHECK(gcd(a, b) == up({1, 1}));
  CHECK(a / up({1, 1}) == up({-1, 1}));
  CHECK_THROWS_AS(a / up({2, 1}), Error);
  CHECK(gcd(UPoly(0), UPoly(0)).is_zero());
}

TEST_CASE("factorization over Q and F_p multiplies back") {
  Rng rng(3);
  for (uint64_t p : {0ULL, 5ULL, 101ULL}) {
    for (int i = 0; i < 20; ++i) {
      UPoly f = random_upoly(rng, p, 9, 30);
      if (f.is_constant()) continue;
      UFactorization fa = factor(f);
      UPoly back = UPoly::constant(p, fa.unit);
      for (const auto& [g, e] : fa.factors) {
        CHECK(is_irreducible(g));
        back *= g.pow(e);
      }
      CHECK(back == f);
    }
  }
  CHECK_FALSE(is_irreducible(up({1, 0, 1}, 2)));  // t^2 + 1 = (t + 1)^2 mod 2
  CHECK(is_irreducible(up({1, 0, 1})));
}

TEST_CASE("integer factorization") {
  auto f = factor_integer(mpz_class(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::make_pair(mpz_class(2), 3));
  CHECK(f[2] == std::make_pair(mpz_class(5), 1));
  CHECK(is_prime(mpz_class("1000000007")));
}

TEST_CASE("field elements stay reduced") {
  BaseField QT = BaseField::rational_functions();
  Elem x = parse_elem(QT, "(t^2-1)/(2*t+2)");
  // (t - 1)(t + 1) / (2(t + 1)) with a monic denominator
  CHECK(x.num() == up({mpq_class(-1, 2), mpq_class(1, 2)}));
  CHECK(x.den().is_one());
  CHECK((x * x.inv()).is_one());
  CHECK_THROWS_AS(Elem::zero(0).inv(), Error);
}

TEST_CASE("multivariate parse and print round-trip") {
  BaseField QT = BaseField::rational_functions();
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    MPoly f = random_form(rng, QT, 3, 1 + i % 3, 20, 2);
    CHECK(parse_mpoly(QT, 3, f.str(QT)) == f);
  }
  MPoly g = parse_mpoly(QT, 3, "x^2 - t*y*z");
  CHECK(g.is_homogeneous());
  CHECK(g.total_degree() == 2);
  CHECK_THROWS_AS(parse_mpoly(QT, 3, "x^2 +"), Error);
}

TEST_CASE("exact division and reduction") {
  BaseField Q = BaseField::rationals();
  MPoly a = parse_mpoly(Q, 3, "x^2-y^2"), b = parse_mpoly(Q, 3, "x+y"), q;
  REQUIRE(divide_exact(a, b, q));
  CHECK(q == parse_mpoly(Q, 3, "x-y"));
  CHECK_FALSE(divide_exact(a, parse_mpoly(Q, 3, "x+z"), q));
  CHECK(reduce(a, {b}).is_zero());
}

TEST_CASE("rank, kernel and determinant") {
  BaseField QT = BaseField::rational_functions();
  Rng rng(12);
  for (int i = 0; i < 10; ++i) {
    Mat a = random_full_rank(rng, QT, 2, 4, 3, 5);
    CHECK(rank(a, 4) == 2);
    CHECK(rank_fast(a, 4) == 2);
    Mat k = right_kernel(a, 4);
    REQUIRE(k.size() == 2);
    for (const auto& v : k)
      for (const auto& r : a) {
        Elem s = Elem::zero(0);
        for (int j = 0; j < 4; ++j) s += r[j] * v[j];
        CHECK(s.is_zero());
      }
  }
  Mat m = {{Elem(0, 2), Elem(0, 1)}, {Elem(0, 1), Elem(0, 1)}};
  CHECK(det(m) == Elem(0, 1));
}

TEST_CASE("weak Popov form keeps the lattice and minimizes degrees") {
  // Rows (t^2, t, 1) and (t, 1, 0) span the same plane as (0, 0, 1) and (t, 1, 0).
  BaseField QT = BaseField::rational_functions();
  Mat a = {{parse_elem(QT, "t^2"), parse_elem(QT, "t"), Elem::one(0)},
           {parse_elem(QT, "t"), Elem::one(0), Elem::zero(0)}};
  PMat s = saturate(a, 3);
  weak_popov(s);
  std::vector<int> deg = row_degrees(s);
  std::sort(deg.begin(), deg.end());
  CHECK(deg == std::vector<int>{0, 1});
  CHECK(poly_vector_height(maximal_minors(s, 3)) == 1);
  CHECK(rank(to_elem(s), 3) == 2);
  Mat both = to_elem(s);
  both.insert(both.end(), a.begin(), a.end());
  CHECK(rank(both, 3) == 2);
}

TEST_CASE("intervals enclose and tighten with precision") {
  mpq_class third(1, 3);
  for (long prec : {64L, 128L, 512L}) {
    PrecisionScope scope(prec);
    Interval l = Interval::log_of(mpz_class(3));
    CHECK(l.lo_d() <= 1.0986122886681098);
    CHECK(l.hi_d() >= 1.0986122886681098);
    CHECK(Interval::from_mpq(third).contains(third));
    CHECK(l.log2_width() < -(prec - 8));
  }
  Interval coarse, fine;
  {
    PrecisionScope s(128);
    coarse = (Interval::e() * Interval(4)).pow(3).log();
  }
  {
    PrecisionScope s(256);
    fine = (Interval::e() * Interval(4)).pow(3).log();
  }
  CHECK(coarse.overlaps(fine));
  CHECK(fine.width().hi_d() <= coarse.width().hi_d());
  CHECK(Interval(2).certainly_lt(Interval(3)));
  CHECK(Interval::pow2(mpz_class(-3)).contains(mpq_class(1, 8)));
}
