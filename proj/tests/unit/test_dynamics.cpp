#include <doctest.h>

#include "hk/dynamics.hpp"
#include "hk/error.hpp"
#include "hk/random.hpp"

using namespace hk;

namespace {

const BaseField Q = BaseField::rationals();

Endo endo(const BaseField& K, std::vector<const char*> forms) {
  std::vector<MPoly> F;
  for (const char* f : forms) F.push_back(parse_mpoly(K, static_cast<int>(forms.size()), f));
  return Endo(K, F);
}

Point qpt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Elem(0, mpq_class(x)));
  return p;
}

}  // namespace

TEST_CASE("resultants") {
  CHECK(abs(macaulay_resultant(endo(Q, {"x^2", "y^2", "z^2"}).F).constant_value()) == 1);
  CHECK(abs(macaulay_resultant(endo(Q, {"x^3", "y^3"}).F).constant_value()) == 1);

  // Sylvester matrix of x0^2 and x0 x1 + x1^2, rows of descending x0-coefficients.
  auto e = [](long v) { return Elem(0, mpq_class(v)); };
  Mat S = {{e(1), e(0), e(0), e(0)}, {e(0), e(1), e(0), e(0)}, {e(0), e(1), e(1), e(0)}, {e(0), e(0), e(1), e(1)}};
  Endo f = endo(Q, {"x^2", "x*y+y^2"});
  CHECK(abs(f.resultant().constant_value()) == abs(det(S).constant_value()));
  CHECK(sylvester_resultant(f.F[0], f.F[1], 2, 2) == det(S));

  CHECK(macaulay_resultant(endo(Q, {"x^2", "x*y"}).F).is_zero());
  CHECK_THROWS_AS(endo(Q, {"x^2", "x*y"}).require_morphism(), Error);
}

TEST_CASE("resultant vanishes exactly on non-morphisms") {
  Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    Endo f = random_morphism(rng, Q, 2, 2, 4);
    CHECK_FALSE(f.resultant().is_zero());
    // A common zero at [0:0:1] kills the resultant.
    std::vector<MPoly> G = f.F;
    for (auto& g : G) g.add_term({0, 0, 2}, -g.coeff({0, 0, 2}));
    CHECK(macaulay_resultant(G).is_zero());
  }
}

TEST_CASE("height comparison constants") {
  IngramConstants a = ingram_constants(2, 2, Q);
  mpz_class five48;
  mpz_ui_pow_ui(five48.get_mpz_t(), 5, 48);
  CHECK(a.c1 == 13);
  CHECK(a.c2 == 27 * five48);
  CHECK(a.c0.interval().overlaps(Interval::from_mpq(mpq_class(7, 2)) * Interval::log_of(mpz_class(3))));

  IngramConstants b = ingram_constants(2, 2, BaseField::rational_functions());
  CHECK(b.c1 == 13);
  CHECK(b.c2 == 0);
  CHECK(b.c0.exact() == 0);

  // (N+1)(d+1)^N (d^N+1)^((N+1)(d+2)^N) at N = 1, d = 2.
  IngramConstants c = ingram_constants(1, 2, Q);
  mpz_class three8;
  mpz_ui_pow_ui(three8.get_mpz_t(), 3, 8);
  CHECK(c.c1 == 5);
  CHECK(c.c2 == 2 * 3 * three8);
}

TEST_CASE("twice the comparison constants stay below the stated hypothesis") {
  IngramConstants a = ingram_constants(2, 2, Q);
  mpz_class five48;
  mpz_ui_pow_ui(five48.get_mpz_t(), 5, 48);
  for (long h : {0L, 1L, 7L, 1000L}) {
    Interval lhs = Interval(2) * (a.c1_h.interval() * Interval(h) + a.c2_h.interval() + a.c0.interval());
    CHECK(lhs.certainly_le(Interval::from_mpz(26 * h + 54 * five48 + 8)));
  }
}

TEST_CASE("canonical heights of fixed points") {
  const mpq_class eps(1, 1000000);
  Endo sq = endo(Q, {"x^2", "y^2"});
  HeightValue h2 = canonical_height(sq, qpt({2, 1}), eps).value;
  CHECK(h2.interval().overlaps(Interval::log_of(mpz_class(2))));
  CHECK(h2.interval().width().hi_d() <= 1e-6);

  Endo cheb = endo(Q, {"x^2-y^2", "y^2"});
  HeightValue h0 = canonical_height(cheb, qpt({0, 1}), eps).value;
  CHECK(h0.interval().lo_d() <= 1e-6);
  CHECK(h0.interval().hi_d() >= 0);
}

TEST_CASE("canonical height of 2 under z^2 - 1 against direct telescoping") {
  // For integers z >= 2, |log|z^2 - 1| - 2 log|z|| <= log(4/3), so after n steps the
  // normalized height is within log(4/3) / 2^n of the limit.
  const int n = 22;
  mpz_class z = 2;
  for (int i = 0; i < n; ++i) z = z * z - 1;
  Interval tail = Interval::log_of(mpq_class(4, 3)) / Interval::pow2(mpz_class(n));
  Interval approx = Interval::log_of(z) / Interval::pow2(mpz_class(n));
  Interval oracle = Interval::hull(approx - tail, approx + tail);
  Endo cheb = endo(Q, {"x^2-y^2", "y^2"});
  HeightValue h = canonical_height(cheb, qpt({2, 1}), mpq_class(1, 1000000)).value;
  CHECK(h.interval().overlaps(oracle));
  CHECK(h.interval().width().hi_d() <= 1e-6);
}

TEST_CASE("functional equation over Q and F_p(t)") {
  Rng rng(33);
  const mpq_class eps(1, 1000);
  BaseField F3 = BaseField::finite_functions(3);
  for (const BaseField& K : {Q, F3}) {
    for (int i = 0; i < 4; ++i) {
      Endo f = random_morphism(rng, K, 1, 2, 5, K.is_function_field() ? 2 : 0);
      Point x = random_point(rng, K, 1, 9, K.is_function_field() ? 3 : 0);
      HeightValue a = canonical_height(f, x, eps / 2).value;
      HeightValue b = canonical_height(f, f.apply(x), eps).value;
      Interval gap = (b.interval() - a.interval() * Interval(2)).abs();
      CHECK(gap.certainly_le(Interval::from_mpq(2 * eps)));
    }
  }
}

TEST_CASE("orbits and preperiodicity") {
  Endo sq = endo(Q, {"x^2", "y^2"});
  Endo cheb = endo(Q, {"x^2-y^2", "y^2"});
  OrbitRecord o1 = orbit(sq, qpt({1, 1}), 10);
  CHECK(o1.tail_length == 0);
  CHECK(o1.cycle_length == 1);
  OrbitRecord o2 = orbit(cheb, qpt({0, 1}), 10);
  CHECK(o2.tail_length == 0);
  CHECK(o2.cycle_length == 2);
  OrbitRecord o3 = orbit(sq, qpt({2, 1}), 5);
  CHECK(o3.truncated);
  CHECK(o3.points.size() == 6);
  CHECK_FALSE(o3.cycle_length.has_value());

  CHECK(is_preperiodic(sq, qpt({1, 1})));
  CHECK_FALSE(is_preperiodic(sq, qpt({2, 1})));
  CHECK(is_preperiodic(cheb, qpt({0, 1})));
  CHECK(is_preperiodic(cheb, qpt({1, 0})));
}

TEST_CASE("census on a line") {
  Endo sq = endo(Q, {"x^2", "y^2", "z^2"});
  CensusReport r = preperiodic_census_on_curve(sq, parse_mpoly(Q, 3, "x+y-z"), 3);
  CHECK(r.verified_complete);
  std::vector<Point> want = {qpt({0, 1, 1}), qpt({1, 0, 1}), qpt({1, -1, 0})};
  REQUIRE(r.points.size() == 3);
  for (const auto& w : want) {
    bool found = false;
    for (const auto& p : r.points) found = found || projectively_equal(p, w);
    CHECK(found);
  }
  // Only the point at z = 0 has coordinates of equal absolute value.
  CensusReport one = preperiodic_census_on_curve(sq, parse_mpoly(Q, 3, "x+y-3*z"), 3);
  REQUIRE(one.points.size() == 1);
  CHECK(projectively_equal(one.points[0], qpt({1, -1, 0})));
  CHECK_THROWS_AS(preperiodic_census_on_curve(sq, parse_mpoly(Q, 3, "x"), 1000000), Error);
}

TEST_CASE("census is independent of the worker count") {
  Endo sq = endo(Q, {"x^2", "y^2", "z^2"});
  MPoly C = parse_mpoly(Q, 3, "x^2+y^2-z^2");
  CensusReport a = preperiodic_census_on_curve(sq, C, 4, 1), b = preperiodic_census_on_curve(sq, C, 4, 3);
  REQUIRE(a.points.size() == b.points.size());
  CHECK(a.candidates == b.candidates);
}
