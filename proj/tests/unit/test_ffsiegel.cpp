#include <doctest.h>

#include "hk/error.hpp"
#include "hk/ffsiegel.hpp"
#include "hk/random.hpp"

using namespace hk;

namespace {

const BaseField QT = BaseField::rational_functions();

SubspaceFF span(std::vector<std::vector<const char*>> rows) {
  Mat m;
  for (const auto& r : rows) {
    Vec v;
    for (const char* x : r) v.push_back(parse_elem(QT, x));
    m.push_back(v);
  }
  return SubspaceFF(QT, static_cast<int>(rows[0].size()), m);
}

Vec form(std::vector<const char*> xs) {
  Vec v;
  for (const char* x : xs) v.push_back(parse_elem(QT, x));
  return v;
}

GradedIdeal ideal(int nvars, std::vector<const char*> gens) {
  std::vector<MPoly> g;
  for (const char* s : gens) g.push_back(parse_mpoly(QT, nvars, s));
  return GradedIdeal(QT, nvars, g);
}

}  // namespace

TEST_CASE("Schmidt heights of fixed subspaces") {
  CHECK(schmidt_height(span({{"1", "0"}, {"0", "1"}})).exact() == 0);
  CHECK(schmidt_height(span({{"t", "1"}})).exact() == 1);
  CHECK(schmidt_height(span({{"t", "1", "0"}, {"0", "t", "1"}})).exact() == 2);
  CHECK(schmidt_height(span({{"1", "t", "t^2"}, {"0", "1", "t^3+1"}})).exact() == 4);
  CHECK_THROWS_AS(span({{"t", "1"}, {"t^2", "t"}}), Error);
  CHECK_THROWS_AS(SubspaceFF(BaseField::rationals(), 2, {{Elem(0, 1), Elem(0, 2)}}), Error);
}

TEST_CASE("Schmidt height is basis independent and self-dual") {
  Rng rng(51);
  for (int i = 0; i < 25; ++i) {
    int amb = static_cast<int>(rand_range(rng, 2, 5)), m = static_cast<int>(rand_range(rng, 1, amb));
    SubspaceFF V(QT, amb, random_full_rank(rng, QT, m, amb, 4, 7));
    Mat g = random_full_rank(rng, QT, m, m, 2, 3);
    Mat rows(m, Vec(amb, Elem::zero(0)));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int j = 0; j < amb; ++j) rows[a][j] += g[a][b] * V.basis[b][j];
    mpq_class h = schmidt_height(V).exact();
    CHECK(schmidt_height(SubspaceFF(QT, amb, rows)).exact() == h);
    CHECK(schmidt_height(orthogonal_complement(V)).exact() == h);
    CHECK(schmidt_height_reduced(V) == h);
  }
}

TEST_CASE("orthogonal complements") {
  SubspaceFF W = orthogonal_complement(span({{"t", "1"}}));
  REQUIRE(W.dim() == 1);
  CHECK((W.basis[0][0] * parse_elem(QT, "t") + W.basis[0][1]).is_zero());
  CHECK(schmidt_height(W).exact() == 1);
  SubspaceFF C = orthogonal_complement(span({{"1", "0", "0"}}));
  CHECK(C.dim() == 2);
  CHECK(schmidt_height(C).exact() == 0);
}

TEST_CASE("Siegel chains") {
  SubspaceFF V = span({{"1", "t", "t^2"}, {"0", "1", "t^3+1"}});
  SiegelChain c = siegel_chain(V);
  CHECK(c.degrees == std::vector<int>{2, 2});
  CHECK(schmidt_height(c.W[0]).exact() <= 2);
  CHECK(schmidt_height(c.W[1]).exact() == 4);

  SiegelChain d = siegel_chain(span({{"t", "1", "0"}, {"0", "t", "1"}}));
  CHECK(schmidt_height(d.W[0]).exact() <= 1);
  SiegelChain e = siegel_chain(span({{"1", "0", "0"}, {"0", "0", "1"}}));
  for (const auto& w : e.W) CHECK(schmidt_height(w).exact() == 0);

  Rng rng(52);
  for (int i = 0; i < 20; ++i) {
    int amb = static_cast<int>(rand_range(rng, 3, 5)), m = static_cast<int>(rand_range(rng, 2, amb));
    SubspaceFF R(QT, amb, random_full_rank(rng, QT, m, amb, 5, 5));
    SiegelChain s = siegel_chain(R);
    mpq_class h = schmidt_height(R).exact();
    for (int k = 1; k <= m; ++k) CHECK(schmidt_height(s.W[k - 1]).exact() * m <= h * k);
  }
}

TEST_CASE("small linear forms") {
  SubspaceFF V = span({{"t", "1"}});
  Vec q = small_linear_form(V);
  CHECK(q == form({"0", "1"}));
  CHECK(h_tilde(V, q).exact() == -1);

  SubspaceFF full = span({{"1", "0"}, {"0", "1"}});
  CHECK(h_tilde(full, small_linear_form(full)).exact() == 0);
  CHECK(h_tilde(full, form({"1", "0"})).exact() == 0);

  SubspaceFF P = span({{"1", "t", "t^2"}, {"0", "1", "t^3+1"}});
  CHECK(h_tilde(P, small_linear_form(P)).exact() == -2);
  CHECK_THROWS_AS(h_tilde(span({{"1", "1"}}), form({"1", "-1"})), Error);
}

TEST_CASE("geometric Hilbert function and Chardin bound") {
  GradedIdeal a = ideal(2, {"x0"});
  CHECK(geometric_hilbert(a, 3) == 1);
  CHECK(chardin_bound(a, 3) == 1);
  CHECK(geometric_hilbert(ideal(2, {"x0-t*x1"}), 2) == 1);
  GradedIdeal c = ideal(3, {"x0*x2-x1^2"});
  CHECK(geometric_hilbert(c, 2) == 5);
  CHECK(chardin_bound(c, 2) == 6);
  CHECK_THROWS_AS(geometric_hilbert(c, 1), Error);
}

TEST_CASE("arithmetic Hilbert function") {
  CHECK(arithmetic_hilbert(ideal(2, {"x0"}), 3).exact() == 0);
  GradedIdeal I = ideal(2, {"x0-t*x1"});
  CHECK(arithmetic_hilbert(I, 1).exact() == 1);
  CHECK(arithmetic_hilbert(I, 2).exact() == 2);
  CHECK(arith_hilbert_lower_bound(1, 0, 1, 2) == 1);
  CHECK(verify_dnice_direct(I, 0));
  for (int delta = 1; delta <= 6; ++delta)
    CHECK(arithmetic_hilbert(I, delta).exact() >= arith_hilbert_lower_bound(1, 0, 1, delta));
  CHECK_THROWS_AS(arith_hilbert_lower_bound(1, 2, 1, 2), Error);
}

TEST_CASE("ideal metadata") {
  GradedIdeal p = GradedIdeal::point(QT, {Elem::one(0), parse_elem(QT, "t")});
  CHECK(p.r == 1);
  CHECK(p.degree == 1);
  CHECK(p.height->exact() == 1);
  GradedIdeal h = ideal(3, {"x0*x2-t*x1^2"});
  CHECK(h.r == 2);
  CHECK(h.degree == 2);
  CHECK(h.nice_D == 3);
}

TEST_CASE("small sections") {
  SmallSection a = small_section(ideal(2, {"x0-t*x1"}), 2);
  CHECK(a.nonmember);
  CHECK(a.bound_holds);
  CHECK(a.value.interval().certainly_le(a.bound.interval()));

  // h = 2, r = 1, degree 1: with D = 0 the right-hand side at delta = 3 is -2 * 2 / e.
  GradedIdeal I = ideal(2, {"x0-t^2*x1"});
  SmallSection b = small_section(I, 3);
  CHECK(b.nonmember);
  CHECK(b.bound_holds);
  CHECK(b.value.interval().certainly_le(Interval(-4) / Interval::e()));

  GradedIdeal pt = GradedIdeal::point(QT, {parse_elem(QT, "t^3+1"), parse_elem(QT, "t"), parse_elem(QT, "t^2-2")});
  for (int delta = 4; delta <= 6; ++delta) {
    SmallSection s = small_section(pt, delta);
    CHECK(s.nonmember);
    CHECK(s.bound_holds);
    CHECK_FALSE(s.q.eval({parse_elem(QT, "t^3+1"), parse_elem(QT, "t"), parse_elem(QT, "t^2-2")}).is_zero());
  }
}

TEST_CASE("nice iterate degrees") {
  CHECK(d_m_formula(2, 1, 2, 2, 1) == 2);
  CHECK(delta_m(2, 1) == 7);
  CHECK(d_m_formula(2, 1, 2, 2, 0) == 3);
  CHECK(delta_m(3, 1) == 9);
  CHECK(d_m_formula(3, 1, 5, 2, 60) == 2);
}
