#include <functional>

#include "hk/cli.hpp"
#include "hk/error.hpp"
#include "hk/random.hpp"

namespace hk {

namespace {

struct Check {
  std::string name;
  std::function<std::string(Rng&)> run;  // empty string on success, else the first failure
};

std::string product_formula(Rng& rng) {
  BaseField Q = BaseField::rationals(), QT = BaseField::rational_functions(), F7 = BaseField::finite_functions(7);
  for (int i = 0; i < 100; ++i) {
    if (!product_formula_check(Q, random_rational(rng, 1000000))) return "Q element";
    if (!product_formula_check(QT, random_function(rng, QT, 6, 20))) return "Q(t) element";
    if (!product_formula_check(F7, random_function(rng, F7, 6, 6))) return "F_7(t) element";
  }
  return "";
}

std::string weil_invariance(Rng& rng) {
  BaseField QT = BaseField::rational_functions();
  for (int i = 0; i < 40; ++i) {
    Point x = random_point(rng, QT, 2, 9, 3);
    Elem lam = random_function(rng, QT, 3, 5);
    Point y;
    for (const auto& c : x) y.push_back(c * lam);
    HeightValue a = weil_height(QT, x), b = weil_height(QT, y), c = weil_height_by_places(QT, x);
    if (a.exact() != b.exact()) return "scaling changed the height";
    if (a.exact() != c.exact()) return "place sum disagrees";
  }
  return "";
}

std::string functional_equation(Rng& rng) {
  BaseField Q = BaseField::rationals();
  mpq_class eps(1, 1000000);
  for (int i = 0; i < 4; ++i) {
    Endo f = random_morphism(rng, Q, 1 + (i & 1), 2, 9);
    IngramConstants c = ingram_constants(f.N, f.d, Q);
    Interval allowed = c.c1_h.interval() * f.height().interval() + c.c2_h.interval();
    for (int k = 0; k < 3; ++k) {
      Point x = random_point(rng, Q, f.N, 20);
      HeightValue h = canonical_height(f, x, eps).value;
      HeightValue hf = canonical_height(f, f.apply(x), eps).value;
      Interval diff = (hf.interval() - h.interval() * Interval(f.d)).abs();
      if (!diff.certainly_le(Interval::from_mpq(2 * eps * (f.d + 1)))) return "functional equation";
      Interval gap = (h.interval() - weil_height(Q, x).interval()).abs();
      if (!gap.certainly_le(allowed)) return "height comparison";
    }
  }
  return "";
}

std::string census(Rng&) {
  BaseField Q = BaseField::rationals();
  Endo sq(Q, {parse_mpoly(Q, 3, "x^2"), parse_mpoly(Q, 3, "y^2"), parse_mpoly(Q, 3, "z^2")});
  CensusReport r = preperiodic_census_on_curve(sq, parse_mpoly(Q, 3, "x+y-z"), 2);
  if (r.points.size() != 3 || !r.verified_complete) return "line x+y-z";
  return "";
}

std::string pushforward_check(Rng&) {
  BaseField Q = BaseField::rationals();
  Endo sq(Q, {parse_mpoly(Q, 3, "x^2"), parse_mpoly(Q, 3, "y^2"), parse_mpoly(Q, 3, "z^2")});
  PushforwardResult p = pushforward(sq, Hypersurface(Q, parse_mpoly(Q, 3, "x+y-z")));
  MPoly want = parse_mpoly(Q, 3, "x^2+y^2+z^2-2*x*y-2*y*z-2*x*z");
  if (normalize_content(Q, p.image.F) != normalize_content(Q, want)) return "image of x+y-z";
  return "";
}

std::string siegel(Rng& rng) {
  BaseField QT = BaseField::rational_functions();
  for (int i = 0; i < 20; ++i) {
    int amb = static_cast<int>(rand_range(rng, 2, 5));
    int m = static_cast<int>(rand_range(rng, 1, amb - 1));
    SubspaceFF V(QT, amb, random_full_rank(rng, QT, m, amb, 3, 3));
    mpq_class h = schmidt_height(V).exact();
    if (h != schmidt_height(orthogonal_complement(V)).exact()) return "duality";
    if (h != schmidt_height_reduced(V)) return "reduced degrees";
    SiegelChain c = siegel_chain(V);
    for (int k = 0; k < m; ++k)
      if (schmidt_height(c.W[k]).exact() * m > h * (k + 1)) return "chain";
    if (h_tilde(V, small_linear_form(V)).exact() * m > -h) return "small linear form";
  }
  return "";
}

std::string hilbert(Rng& rng) {
  BaseField QT = BaseField::rational_functions();
  for (int i = 0; i < 10; ++i) {
    GradedIdeal I = GradedIdeal::point(QT, random_point(rng, QT, 2, 4, 2));
    for (int delta = 1; delta <= 3; ++delta)
      if (mpz_class(geometric_hilbert(I, delta)) > chardin_bound(I, delta)) return "Chardin bound";
    int delta = 2 * *I.nice_D + 2;
    if (I.height->exact() < 1) continue;
    SmallSection s = small_section(I, delta);
    if (!s.nonmember || !s.bound_holds) return "small section";
  }
  return "";
}

std::string bound_numbers(Rng&) {
  IngramConstants c = ingram_constants(2, 2, BaseField::rationals());
  mpz_class c2 = 27;
  for (int i = 0; i < 48; ++i) c2 *= 5;
  if (c.c1 != 13 || c.c2 != c2) return "ingram constants";
  BoundReport f = fermat_bounds(2, mpz_class(1) << 27, HeightValue(mpq_class(1)), HeightValue(mpq_class(1)),
                                FieldCase::FunctionField);
  if (f.bound != mpz_class(1) << 142 || !f.hypotheses_hold()) return "Fermat count";
  for (int l = 2; l <= 3; ++l) {
    mpq_class want(mpz_class(1), mpz_class(1) << (500 * l * l * l));
    if (prop54_lower(l, HeightValue(mpq_class(0))).exact() != want) return "uniform diagonal bound";
  }
  HeightValue h1(mpq_class(1)), h2(mpq_class(2));
  if (zhang_bound(2, 2, 1, 2, h1, h2, FieldCase::Rational).bound < zhang_bound(2, 2, 1, 2, h1, h2.scale(2), FieldCase::Rational).bound)
    return "monotonicity";
  return "";
}

}  // namespace

json run_selftest(uint64_t seed) {
  const std::vector<Check> checks = {
      {"product formula", product_formula},
      {"Weil height invariance", weil_invariance},
      {"canonical height functional equation", functional_equation},
      {"preperiodic census", census},
      {"pushforward", pushforward_check},
      {"Siegel duality, chain and small form", siegel},
      {"Hilbert bounds and small sections", hilbert},
      {"bound evaluators", bound_numbers},
  };
  json out = json::array();
  bool all = true;
  for (const auto& c : checks) {
    Rng rng(seed);
    std::string err;
    try {
      err = c.run(rng);
    } catch (const Error& e) {
      err = e.what();
    }
    all = all && err.empty();
    json j = {{"name", c.name}, {"passed", err.empty()}};
    if (!err.empty()) j["failure"] = err;
    out.push_back(j);
  }
  return {{"seed", seed}, {"checks", out}, {"passed", all}};
}

}  // namespace hk
