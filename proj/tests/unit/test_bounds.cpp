#include <doctest.h>

#include "hk/bounds.hpp"
#include "hk/error.hpp"

using namespace hk;

namespace {

HeightValue hq(long a, long b = 1) { return HeightValue(mpq_class(a, b)); }

mpz_class pw(long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

const FieldCase FF = FieldCase::FunctionField;
const FieldCase QQ = FieldCase::Rational;

}  // namespace

TEST_CASE("degree bound at the hypothesis floor of the conic example") {
  mpz_class c2 = 27 * pw(5, 48);
  Interval c0 = Interval::from_mpq(mpq_class(7, 2)) * Interval::log_of(mpz_class(3));
  HeightValue hhat(Interval::from_mpz(54 * pw(5, 48) + 8) - Interval::from_mpz(c2) - c0);
  BoundReport z = zhang_bound(2, 2, 1, 2, hq(0), hhat, QQ);
  CHECK(z.bound >= 48 * pw(4000, 3));
  CHECK(z.bound <= 48 * pw(4074, 3));
  CHECK(z.hypotheses_hold());
  CHECK_FALSE(z.latex.empty());
  REQUIRE(z.threshold.has_value());
  CHECK(z.threshold->interval().certainly_positive());
}

TEST_CASE("degree bound is monotone") {
  for (FieldCase K : {QQ, FF}) {
    for (long h : {1L, 10L, 1000L}) {
      mpz_class base = zhang_bound(2, 2, 1, 2, hq(1), hq(h), K).bound;
      CHECK(zhang_bound(2, 2, 1, 2, hq(1), hq(2 * h), K).bound <= base);
      CHECK(zhang_bound(2, 2, 1, 2, hq(3), hq(h), K).bound >= base);
      CHECK(zhang_bound(2, 2, 1, 3, hq(1), hq(h), K).bound >= base);
    }
  }
}

TEST_CASE("degree bound over function fields with trivial dynamics") {
  // c2 = c0 = 0 and h(Phi) = 0: the bound is 3N(r+1)(deg X)^2.
  CHECK(zhang_bound(2, 2, 1, 2, hq(0), hq(1), FF).bound == 3 * 2 * 2 * 4);
  CHECK(zhang2_bound(3, 2, 1, 2, hq(0), hq(1), FF).bound == 72);
  CHECK_THROWS_AS(zhang_bound(2, 2, 1, 2, hq(0), hq(0), FF), Error);
  CHECK_THROWS_AS(zhang_bound(2, 2, 1, 2, hq(0), hq(-1), QQ), Error);
}

TEST_CASE("embedding correction") {
  CHECK(embedding_correction(2, FF).exact() == 0);
  Interval want = Interval(2) * Interval::log_of(mpz_class(6)) + Interval(2) * Interval::log_of(mpz_class(3));
  CHECK(embedding_correction(2, QQ).interval().overlaps(want));
  BoundReport g = zhang2_bound(2, 2, 1, 2, hq(1), hq(5), QQ, true);
  BoundReport s = zhang2_bound(2, 2, 1, 2, hq(1), hq(5), QQ, false);
  CHECK(g.bound > s.bound);
}

TEST_CASE("choice of the iterate") {
  MChoice m = choice_of_m(2, 1, hq(0), hq(1), 2, QQ);
  CHECK(m.m == 14);
  CHECK(m.verified == Verdict::True);
  CHECK_FALSE(m.clamped);
  MChoice big = choice_of_m(2, 1, hq(0), HeightValue(mpq_class(pw(10, 9))), 2, QQ);
  CHECK(big.m == 0);
  CHECK(big.clamped);
  long prev = m.m;
  for (int d = 3; d <= 6; ++d) {
    long cur = choice_of_m(d, 1, hq(0), hq(1), 2, QQ).m;
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("small points on Fermat curves") {
  mpz_class n = mpz_class(1) << 27;
  BoundReport f = fermat_bounds(2, n, hq(1), hq(1), FF);
  CHECK(f.bound == (mpz_class(1) << 79) * n * n * 512);
  CHECK(f.bound == mpz_class(1) << 142);
  CHECK(f.hypotheses_hold());
  BoundReport small = fermat_bounds(2, mpz_class(1000), hq(1), hq(1), FF);
  CHECK_FALSE(small.hypotheses_hold());
  CHECK(fermat_height_lower(2, hq(3), FF).interval().certainly_positive());
}

TEST_CASE("n-threshold") {
  // Delta huge collapses the bracket to 1.
  BoundReport t = prop52_n_threshold(2, hq(1), HeightValue(mpq_class(pw(10, 80))), FF);
  CHECK(t.value.interval().lo_d() >= 144);
  CHECK(t.value.interval().hi_d() <= 144.000001);
  // Number-field floor at l = 2 stays below 2^(1600 l^3).
  BoundReport nf = prop52_n_threshold(2, hq(1), prop54_lower(2, hq(1)), QQ);
  CHECK(nf.bound <= mpz_class(1) << 12800);
  CHECK_THROWS_AS(prop52_n_threshold(2, hq(1), hq(0), FF), Error);
}

TEST_CASE("diagonal height lower bounds") {
  CHECK(prop53_lower(4, hq(10), FF).exact() == mpq_class(10, 9));
  for (int l = 2; l <= 3; ++l) {
    mpq_class want(mpz_class(1), mpz_class(1) << (500 * l * l * l));
    CHECK(prop54_lower(l, hq(0)).exact() == want);
    CHECK(prop54_lower(l, hq(7)).exact() == 7 * want);
  }
}

TEST_CASE("niceness degrees") {
  BoundReport a = dm_report(2, 1, 2, 2, 1);
  CHECK(a.bound == 7);
  CHECK(a.hypotheses_hold());
  BoundReport b = dm_report(2, 1, 2, 2, 0);
  CHECK(b.bound == 9);
  CHECK(b.hypotheses_hold());
  CHECK(std::string(verdict_name(Verdict::Inconclusive)) == "INCONCLUSIVE");
}
