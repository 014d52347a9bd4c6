#include <doctest.h>

#include "hk/chow.hpp"
#include "hk/error.hpp"
#include "hk/random.hpp"

using namespace hk;

namespace {

const BaseField Q = BaseField::rationals();
const BaseField QT = BaseField::rational_functions();

Hypersurface hyp(const BaseField& K, int nvars, const char* F) { return Hypersurface(K, parse_mpoly(K, nvars, F)); }

// Chow form of a plane curve: F evaluated at the intersection point u x v of two lines.
MPoly plane_chow_oracle(const MPoly& F) {
  uint64_t p = F.p();
  auto u = [&](int i) { return MPoly::var(p, 6, i); };
  auto v = [&](int i) { return MPoly::var(p, 6, 3 + i); };
  std::vector<MPoly> w = {u(1) * v(2) - u(2) * v(1), u(2) * v(0) - u(0) * v(2), u(0) * v(1) - u(1) * v(0)};
  MPoly out(p, 6);
  for (const auto& [e, c] : F.terms()) {
    MPoly m = MPoly::constant(p, 6, c);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) m = m * w[i];
    out = out + m;
  }
  return out;
}

}  // namespace

TEST_CASE("irreducibility certificates") {
  CHECK(check_irreducible(Q, parse_mpoly(Q, 3, "x^2+y^2-z^2")) == Irreducibility::Certified);
  CHECK(check_irreducible(QT, parse_mpoly(QT, 3, "x*z-t*y^2")) == Irreducibility::Certified);
  CHECK(check_irreducible(Q, parse_mpoly(Q, 3, "x*y")) == Irreducibility::Unverified);
}

TEST_CASE("Chow forms of plane curves match the cross-product oracle") {
  Rng rng(41);
  for (int i = 0; i < 8; ++i) {
    MPoly F = random_form(rng, QT, 3, 1 + i % 2, 5, 2);
    Hypersurface X(QT, F);
    ChowForm ch = chow_form(X);
    CHECK(ch.r == 2);
    CHECK(ch.degree == F.total_degree());
    CHECK(normalize_content(QT, ch.poly) == normalize_content(QT, plane_chow_oracle(F)));
    CHECK(philippon_height(X).exact() ==
          vector_height(QT, normalize_content(QT, plane_chow_oracle(F)).coefficient_vector()).exact());
  }
}

TEST_CASE("Chow heights of fixed hypersurfaces") {
  CHECK(philippon_height(hyp(QT, 3, "x")).exact() == 0);
  CHECK(philippon_height(hyp(QT, 2, "x0-t*x1")).exact() == 1);
  CHECK(philippon_height(hyp(QT, 3, "x0*x2-t^2*x1^2")).exact() == 2);
  // Zero-cycle of [1:t] and [1:-t]: (u0 + t u1)(u0 - t u1).
  ChowForm pts = chow_form(QT, {{Elem::one(0), parse_elem(QT, "t")}, {Elem::one(0), parse_elem(QT, "-t")}});
  CHECK(normalize_content(QT, pts.poly) == normalize_content(QT, parse_mpoly(QT, 2, "x0^2-t^2*x1^2")));
  CHECK(philippon_height(QT, pts).exact() == 2);
}

TEST_CASE("degree-d heights scale the Chow height") {
  DegreeDHeight a = degree_d_height(hyp(QT, 3, "x0-t*x1+x2"), {1, 1});
  CHECK(a.value.exact() == philippon_height(hyp(QT, 3, "x0-t*x1+x2")).exact());
  CHECK(a.identity_holds);
  DegreeDHeight b = degree_d_height(hyp(QT, 2, "x0-t*x1"), {2});
  CHECK(b.value.exact() == 2);
  CHECK(b.identity_holds);
  DegreeDHeight c = degree_d_height(hyp(QT, 3, "x0"), {2, 1});
  CHECK(c.value.exact() == 0);
  DegreeDHeight d = degree_d_height(hyp(QT, 3, "x0+t*x1-t^2*x2"), {2, 1});
  CHECK(d.value.exact() == d.expected.exact());
  CHECK_THROWS_AS(degree_d_height(hyp(QT, 3, "x0-t*x1"), {1}), Error);
}

TEST_CASE("pushforward under the squaring map") {
  std::vector<MPoly> sq = {parse_mpoly(Q, 3, "x^2"), parse_mpoly(Q, 3, "y^2"), parse_mpoly(Q, 3, "z^2")};
  Endo f(Q, sq);
  PushforwardResult a = pushforward(f, hyp(Q, 3, "x+y-z"));
  CHECK(normalize_content(Q, a.image.F) == normalize_content(Q, parse_mpoly(Q, 3, "x^2+y^2+z^2-2*x*y-2*y*z-2*x*z")));
  CHECK(a.fiber_degree == 1);
  PushforwardResult b = pushforward(f, hyp(Q, 3, "x"));
  CHECK(normalize_content(Q, b.image.F) == parse_mpoly(Q, 3, "x"));
  CHECK(b.fiber_degree == 2);
  // Parametrization [a^2 : b^2 : (a+b)^2] of the image conic.
  for (long s : {-3L, 1L, 5L})
    CHECK(a.image.F.eval({Elem(0, mpq_class(s * s)), Elem(0, mpq_class(1)), Elem(0, mpq_class((s + 1) * (s + 1)))})
              .is_zero());
  CHECK_THROWS_AS(pushforward(f, hyp(Q, 3, "x*y")), Error);
}

TEST_CASE("canonical heights of curves") {
  Endo f(Q, {parse_mpoly(Q, 3, "x^2"), parse_mpoly(Q, 3, "y^2"), parse_mpoly(Q, 3, "z^2")});
  HypersurfaceHeight a = canonical_height_hypersurface(f, hyp(Q, 3, "x"), 2);
  CHECK(a.value.interval().contains_zero());
  HypersurfaceHeight b = canonical_height_hypersurface(f, hyp(Q, 3, "x+y-z"), 1);
  Interval center = philippon_height(b.chain.back()).interval() / Interval(4);
  CHECK(b.center.interval().overlaps(center));
  CHECK(b.value.interval().overlaps(b.center.interval()));

  Endo g(QT, {parse_mpoly(QT, 3, "x^2+y^2"), parse_mpoly(QT, 3, "y^2"), parse_mpoly(QT, 3, "z^2")});
  HypersurfaceHeight c = canonical_height_hypersurface(g, hyp(QT, 3, "x+y-z"), 1);
  CHECK(c.value.is_exact());
  CHECK(c.value.exact() == 0);
}

TEST_CASE("slicing stays below the normalized height") {
  SlicingReport iso = slicing_minimum_test(hyp(QT, 3, "x^2+y^2-z^2"), 10, 7);
  CHECK(iso.normalized_height.exact() == 0);
  for (const auto& s : iso.slices) CHECK(s.min_height.exact() == 0);

  SlicingReport r = slicing_minimum_test(hyp(QT, 3, "x*z-t*y^2"), 20, 7);
  CHECK(r.holds);
  for (const auto& s : r.slices) CHECK(s.min_height.exact() <= r.normalized_height.exact());
  SlicingReport again = slicing_minimum_test(hyp(QT, 3, "x*z-t*y^2"), 20, 7);
  REQUIRE(again.slices.size() == r.slices.size());
  for (size_t i = 0; i < r.slices.size(); ++i) CHECK(again.slices[i].line == r.slices[i].line);
}
