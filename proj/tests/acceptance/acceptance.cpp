// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "hk/bounds.hpp"
#include "hk/chow.hpp"
#include "hk/ffsiegel.hpp"
#include "hk/error.hpp"
#include "hk/random.hpp"

using namespace hk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

bool run(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += "; exceeded " + std::to_string(static_cast<int>(limit_s)) + " s";
  }
  std::printf("%s %2d %-34s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

mpz_class pow_z(long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

Outcome fail_at(const std::string& what) { return {false, what}; }

// ---- 1 -------------------------------------------------------------------

Outcome product_formula() {
  PrecisionScope prec(256);
  Rng rng(101);
  BaseField Q = BaseField::rationals(), QT = BaseField::rational_functions();
  for (int i = 0; i < 10000; ++i) {
    HeightValue s;
    Elem x = random_rational(rng, 1000000);
    if (!product_formula_check(Q, x, &s) || !s.interval().contains_zero() || !(s.interval().log2_width() < -200))
      return fail_at("Q element " + std::to_string(i));
    Elem y = random_function(rng, QT, 12, 1000000);
    if (!product_formula_check(QT, y, &s) || !s.is_exact() || s.exact() != 0)
      return fail_at("Q(t) element " + std::to_string(i));
  }
  return {true, "10000 elements of Q and of Q(t)"};
}

// ---- 2, 3 ----------------------------------------------------------------

struct DynSample {
  int violations_fe = 0, violations_ingram = 0, cases = 0;
  bool done = false;
};

DynSample& dyn_sample() {
  static DynSample s;
  if (s.done) return s;
  s.done = true;
  Rng rng(202);
  BaseField Q = BaseField::rationals();
  const mpq_class eps(1, 1000000);
  for (int k = 0; k < 50; ++k) {
    int N = k < 25 ? 1 : 2;
    int d = 2 + static_cast<int>(rng() % 2);
    Endo f = random_morphism(rng, Q, N, d, 100);
    IngramConstants c = ingram_constants(N, d, Q);
    Interval allowed = c.c1_h.interval() * f.height().interval() + c.c2_h.interval();
    for (int j = 0; j < 20; ++j) {
      Point x = random_point(rng, Q, N, 1000);
      // d * h(x) is known to eps when h(x) is known to eps / d.
      HeightValue hx = canonical_height(f, x, eps / d).value;
      HeightValue hfx = canonical_height(f, f.apply(x), eps).value;
      Interval gap = (hfx.interval() - hx.interval() * Interval(d)).abs();
      if (!gap.certainly_le(Interval::from_mpq(2 * eps))) ++s.violations_fe;
      Interval diff = (hx.interval() - weil_height(Q, x).interval()).abs();
      if (!diff.certainly_le(allowed)) ++s.violations_ingram;
      ++s.cases;
    }
  }
  return s;
}

Outcome functional_equation() {
  DynSample& s = dyn_sample();
  return {s.violations_fe == 0, std::to_string(s.cases - s.violations_fe) + "/" + std::to_string(s.cases) + " within 2 eps"};
}

Outcome height_comparison() {
  DynSample& s = dyn_sample();
  return {s.violations_ingram == 0,
          std::to_string(s.cases - s.violations_ingram) + "/" + std::to_string(s.cases) + " conclusive"};
}

// ---- 4 -------------------------------------------------------------------

// Orbit of a primitive integer point under coordinatewise squaring. Squares of a primitive
// vector stay primitive, so any coordinate of absolute value above 1 grows without bound.
bool squaring_preperiodic(std::vector<mpz_class> v) {
  std::set<std::vector<mpz_class>> seen;
  for (;;) {
    for (const auto& c : v)
      if (abs(c) > 1) return false;
    if (!seen.insert(v).second) return true;
    for (auto& c : v) c *= c;
  }
}

std::vector<mpz_class> normalized(std::vector<mpz_class> v) {
  mpz_class g = 0;
  for (const auto& c : v) g = gcd(g, c);
  for (auto& c : v) c /= g;
  for (const auto& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

// Brute force over a box on the line a x + b y + c z = 0.
std::set<std::vector<mpz_class>> oracle_census(long a, long b, long c, long box) {
  std::set<std::vector<mpz_class>> out;
  for (long x = -box; x <= box; ++x)
    for (long y = -box; y <= box; ++y)
      for (long z = -box; z <= box; ++z) {
        if ((x == 0 && y == 0 && z == 0) || a * x + b * y + c * z != 0) continue;
        std::vector<mpz_class> v = normalized({x, y, z});
        if (squaring_preperiodic(v)) out.insert(v);
      }
  return out;
}

Outcome census() {
  BaseField Q = BaseField::rationals();
  Endo sq(Q, {parse_mpoly(Q, 3, "x^2"), parse_mpoly(Q, 3, "y^2"), parse_mpoly(Q, 3, "z^2")});
  struct Line {
    const char* text;
    long a, b, c;
    size_t expected;  // 0: defer to the oracle alone
  };
  const Line lines[] = {{"x+y-z", 1, 1, -1, 3}, {"x-y", 1, -1, 0, 0}};
  std::string detail;
  for (const auto& L : lines) {
    std::set<std::vector<mpz_class>> want = oracle_census(L.a, L.b, L.c, 12);
    // Smallest box whose log-size reaches the preperiodic height cutoff.
    mpz_class B = std::max(mpz_class(1), sq.local().cutoff.interval().exp().ceil_hi());
    CensusReport r = preperiodic_census_on_curve(sq, parse_mpoly(Q, 3, L.text), B);
    std::set<std::vector<mpz_class>> got;
    for (const auto& P : r.points) {
      std::vector<mpz_class> v;
      for (const auto& c : P) v.push_back(mpz_class(c.constant_value()));
      got.insert(normalized(v));
    }
    if (!r.verified_complete) return fail_at(std::string(L.text) + ": enumeration box below the cutoff");
    if (got != want) return fail_at(std::string(L.text) + ": census differs from the oracle");
    if (L.expected && got.size() != L.expected) return fail_at(std::string(L.text) + ": wrong count");
    detail += std::string(L.text) + " -> " + std::to_string(got.size()) + " points; ";
  }
  return {true, detail};
}

// ---- 5 -------------------------------------------------------------------

// Fiber size of the restriction of f to the line through P0 and P1 over the image of a
// generic parameter, from the gcd of the 2x2 minors.
Outcome pushforward_identity() {
  BaseField Q = BaseField::rationals();
  Endo sq(Q, {parse_mpoly(Q, 3, "x^2"), parse_mpoly(Q, 3, "y^2"), parse_mpoly(Q, 3, "z^2")});
  PushforwardResult p = pushforward(sq, Hypersurface(Q, parse_mpoly(Q, 3, "x+y-z")));
  MPoly want = parse_mpoly(Q, 3, "x^2+y^2+z^2-2*x*y-2*y*z-2*x*z");
  if (normalize_content(Q, p.image.F) != normalize_content(Q, want)) return fail_at("image of x+y-z");

  Rng rng(505);
  for (int k = 0; k < 20; ++k) {
    int d = 2 + (k % 2);
    Endo f = random_morphism(rng, Q, 2, d, 5);
    MPoly line = random_form(rng, Q, 3, 1, 5);
    PushforwardResult r = pushforward(f, Hypersurface(Q, line));
    const MPoly& G = r.image.F;

    Mat ker = right_kernel({{line.coeff({1, 0, 0}), line.coeff({0, 1, 0}), line.coeff({0, 0, 1})}}, 3);
    std::vector<Elem> P;  // P0 + s P1 with s the polynomial variable
    for (int j = 0; j < 3; ++j)
      P.push_back(Elem(UPoly(0, {ker[0][j].constant_value(), ker[1][j].constant_value()})));
    std::vector<Elem> g;
    for (const auto& Fi : f.F) g.push_back(Fi.eval(P));
    if (!G.eval(g).is_zero()) return fail_at("image form does not vanish on the image, pair " + std::to_string(k));

    mpq_class s0(static_cast<long>(rand_range(rng, 3, 1000)), 7);
    std::vector<mpq_class> Qp;
    for (const auto& gi : g) Qp.push_back(gi.num().eval(s0));
    UPoly h;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        h = gcd(h, g[i].num().scale(Qp[j]) - g[j].num().scale(Qp[i]));
    int fiber = (h / gcd(h, h.derivative())).deg();
    int deg_image = G.total_degree();
    if (d != deg_image * fiber || fiber != r.fiber_degree)
      return fail_at("degree identity, pair " + std::to_string(k) + ": d=" + std::to_string(d) +
                     " image degree " + std::to_string(deg_image) + " fiber " + std::to_string(fiber));
  }
  return {true, "conic image exact; 20/20 degree identities"};
}

// ---- 6 -------------------------------------------------------------------

Outcome siegel_suite() {
  Rng rng(606);
  BaseField QT = BaseField::rational_functions();
  for (int k = 0; k < 200; ++k) {
    int amb = static_cast<int>(rand_range(rng, 2, 6));
    int m = static_cast<int>(rand_range(rng, 1, amb));
    SubspaceFF V(QT, amb, random_full_rank(rng, QT, m, amb, 6, 9));
    mpq_class h = schmidt_height(V).exact();
    SubspaceFF W = orthogonal_complement(V);
    for (const auto& w : W.basis)
      for (const auto& v : V.basis) {
        Elem dot = Elem::zero(0);
        for (int j = 0; j < amb; ++j) dot += w[j] * v[j];
        if (!dot.is_zero()) return fail_at("complement not orthogonal, subspace " + std::to_string(k));
      }
    if (W.dim() + m != amb || schmidt_height(W).exact() != h) return fail_at("duality, subspace " + std::to_string(k));
    if (schmidt_height_reduced(V) != h) return fail_at("reduced degrees, subspace " + std::to_string(k));
    SiegelChain c = siegel_chain(V);
    for (int i = 1; i <= m; ++i)
      if (schmidt_height(c.W[i - 1]).exact() * m > h * i) return fail_at("chain, subspace " + std::to_string(k));
    if (h_tilde(V, small_linear_form(V)).exact() * m > -h)
      return fail_at("small linear form, subspace " + std::to_string(k));
  }
  return {true, "200 subspaces"};
}

// ---- 7 -------------------------------------------------------------------

mpz_class binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Outcome hilbert_suite() {
  Rng rng(707);
  BaseField QT = BaseField::rational_functions();
  int chardin_cases = 0, lower_cases = 0;
  for (int k = 0; k < 100; ++k) {
    int N = static_cast<int>(rand_range(rng, 1, 3));
    GradedIdeal I;
    int e = 1;
    if (k % 2 == 0) {
      e = static_cast<int>(rand_range(rng, 1, 3));
      I = GradedIdeal(QT, N + 1, {random_form(rng, QT, N + 1, e, 5, 2)});
    } else {
      I = GradedIdeal::point(QT, random_point(rng, QT, N, 5, 2));
    }
    for (int delta = e; delta <= e + 3; ++delta) {
      // Hilbert function of S/I: a principal ideal removes a shifted copy of S; a point has value 1.
      mpz_class H = k % 2 == 0 ? binom(delta + N, N) - binom(delta - e + N, N) : mpz_class(1);
      int r = k % 2 == 0 ? N : 1;
      mpz_class bound = mpz_class(e) * binom(delta + r - 1, r - 1);
      if (mpz_class(geometric_hilbert(I, delta)) != H) return fail_at("Hilbert function, ideal " + std::to_string(k));
      if (chardin_bound(I, delta) != bound || H > bound) return fail_at("Chardin bound, ideal " + std::to_string(k));
      ++chardin_cases;
    }
  }

  auto check_lower = [&](const GradedIdeal& I, int D, int top) -> bool {
    for (int delta = std::max(D + 1, I.max_generator_degree()); delta <= top; ++delta) {
      mpq_class lb = arith_hilbert_lower_bound(I.height->exact(), D, I.r, delta);
      mpq_class ratio(delta - D - 1, I.r);
      ratio.canonicalize();
      mpq_class want = I.height->exact();
      for (int i = 0; i < I.r; ++i) want *= ratio;
      if (lb != want || arithmetic_hilbert(I, delta).exact() < lb) return false;
      ++lower_cases;
    }
    return true;
  };
  for (int k = 1; k <= 4; ++k) {
    GradedIdeal I(QT, 2, {parse_mpoly(QT, 2, "x0-t^" + std::to_string(k) + "*x1")});
    if (!I.height || I.height->exact() != k) return fail_at("height of x0 - t^k x1");
    if (!verify_dnice_direct(I, 0)) return fail_at("x0 - t^k x1 not certified 0-nice");
    if (!check_lower(I, 0, 8) || !check_lower(I, *I.nice_D, 8)) return fail_at("lower bound on x0 - t^k x1");
  }
  for (int k = 0; k < 10; ++k) {
    GradedIdeal I = GradedIdeal::point(QT, random_point(rng, QT, 1 + k % 2, 5, 2));
    if (I.nice_D && I.height && !check_lower(I, *I.nice_D, *I.nice_D + 4)) return fail_at("lower bound on a point");
    if (I.nice_D && I.height && verify_dnice_direct(I, 0) && !check_lower(I, 0, 4))
      return fail_at("lower bound on a point with D = 0");
  }
  for (int k = 0; k < 6; ++k) {
    GradedIdeal I(QT, 3, {random_form(rng, QT, 3, 2, 3, 2)});
    if (I.nice_D && I.height && !check_lower(I, *I.nice_D, *I.nice_D + 2)) return fail_at("lower bound on a conic");
  }
  return {true, std::to_string(chardin_cases) + " Chardin cases, " + std::to_string(lower_cases) + " lower-bound cases"};
}

// ---- 8 -------------------------------------------------------------------

Outcome small_section_suite() {
  Rng rng(808);
  BaseField QT = BaseField::rational_functions();
  int cases = 0;
  for (int k = 0; k < 20; ++k) {
    Point x;
    mpq_class h;
    int N = 1 + k % 2;
    do {
      x = random_point(rng, QT, N, 4, 3);
      h = weil_height(QT, x).exact();
    } while (h < 1 || h > 5);
    GradedIdeal I = GradedIdeal::point(QT, x);
    if (!I.height || I.height->exact() != h || !I.nice_D) return fail_at("point ideal metadata");
    int D = *I.nice_D, r = I.r;
    for (int delta = 2 * D + r + 1; delta <= 2 * D + r + 4; ++delta) {
      SmallSection s = small_section(I, delta);
      // A form lies in the ideal of a point exactly when it vanishes there.
      Elem qx = s.q.eval(x);
      if (qx.is_zero() || !s.nonmember) return fail_at("q lies in the ideal, point " + std::to_string(k));
      Interval rhs = Interval::from_mpq(-h * pow_z(delta - D - 1, r)) /
                     (Interval(r) * Interval::e().pow(r) * Interval(I.degree) *
                      Interval::from_mpz(pow_z(delta + r - 1, r - 1)));
      if (!s.value.interval().certainly_le(rhs) || !s.bound_holds)
        return fail_at("section inequality, point " + std::to_string(k) + " delta " + std::to_string(delta));
      Interval threshold = Interval::from_mpq(h / I.degree) / (Interval(4) * Interval::e()).pow(r);
      if (weil_height(QT, x).interval().certainly_le(threshold) && !qx.is_zero())
        return fail_at("small point off the zero set of q");
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " (ideal, degree) pairs"};
}

// ---- 9 -------------------------------------------------------------------

Outcome stated_constants() {
  PrecisionScope prec(256);
  std::string bad;
  IngramConstants c = ingram_constants(2, 2, BaseField::rationals());
  mpz_class c2 = 27 * pow_z(5, 48);
  Interval c0 = Interval::from_mpq(mpq_class(7, 2)) * Interval::log_of(mpz_class(3));
  if (c.c1 != 13 || c.c2 != c2 || !c.c0.interval().overlaps(c0) ||
      !(c.c0.interval().width().hi_d() < 1e-60))
    bad += " ingram";

  // Hypothesis floor: h(F) = 26 h(Phi) + 54*5^48 + 8 with h(Phi) = 0, minus c2 + c0.
  HeightValue hF(mpq_class(54 * pow_z(5, 48) + 8));
  HeightValue hhat(hF.interval() - Interval::from_mpz(c2) - c0);
  BoundReport z = zhang_bound(2, 2, 1, 2, HeightValue(mpq_class(0)), hhat, FieldCase::Rational);
  if (z.bound < 48 * pow_z(4000, 3) || z.bound > 48 * pow_z(4074, 3)) bad += " zhang";

  mpz_class n = mpz_class(1) << 27;
  BoundReport f = fermat_bounds(2, n, HeightValue(mpq_class(1)), HeightValue(mpq_class(1)), FieldCase::FunctionField);
  if (f.bound != (mpz_class(1) << 79) * n * n * 512 || !f.hypotheses_hold()) bad += " fermat";

  std::string p52;
  for (int l = 2; l <= 6; ++l) {
    HeightValue floor = prop53_lower(l, HeightValue(mpq_class(1)), FieldCase::FunctionField);
    BoundReport t = prop52_n_threshold(l, HeightValue(mpq_class(1)), floor, FieldCase::FunctionField);
    if (t.bound > 2000000 * pow_z(l, 6)) p52 += " l=" + std::to_string(l) + ":" + std::to_string(t.value.hi());
  }
  if (!p52.empty()) bad += " n-threshold above 2e6 l^6 at" + p52;

  for (int l = 2; l <= 3; ++l) {
    mpq_class want(mpz_class(1), mpz_class(1) << (500 * l * l * l));
    HeightValue v = prop54_lower(l, HeightValue(mpq_class(0)));
    if (!v.is_exact() || v.exact() != want) bad += " pairing-floor l=" + std::to_string(l);
  }
  if (!bad.empty()) return {false, "mismatch:" + bad};
  return {true, "zhang bound " + z.bound.get_str()};
}

// ---- 10 ------------------------------------------------------------------

Outcome slicing() {
  Rng rng(1010);
  BaseField QT = BaseField::rational_functions();
  int curves = 0, slices = 0, conclusive = 0;
  while (curves < 20) {
    int deg = 1 + curves % 2;
    MPoly F = random_form(rng, QT, 3, deg, 3, 2);
    if (check_irreducible(QT, F) != Irreducibility::Certified) continue;
    Hypersurface X(QT, F);
    SlicingReport rep = slicing_minimum_test(X, 50, 1000 + curves);
    for (const auto& s : rep.slices) {
      ++slices;
      if (s.min_height.interval().certainly_le(rep.normalized_height.interval())) {
        ++conclusive;
      } else if (rep.normalized_height.interval().certainly_lt(s.min_height.interval())) {
        return fail_at("slice minimum above the normalized height, curve " + std::to_string(curves));
      }
    }
    if (rep.slices.size() != 50) return fail_at("slice count");
    ++curves;
  }
  return {conclusive > 0, std::to_string(conclusive) + "/" + std::to_string(slices) + " conclusive slices hold"};
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "product formula", 10, product_formula);
  ok &= run(2, "canonical height functional eq.", 120, functional_equation);
  ok &= run(3, "height comparison sweep", 120, height_comparison);
  ok &= run(4, "preperiodic census", 30, census);
  ok &= run(5, "pushforward identity", 60, pushforward_identity);
  ok &= run(6, "Siegel suite", 60, siegel_suite);
  ok &= run(7, "Hilbert suite", 60, hilbert_suite);
  ok &= run(8, "small sections", 120, small_section_suite);
  ok &= run(9, "published constants", 10, stated_constants);
  ok &= run(10, "slicing minimum", 120, slicing);
  std::printf("%s\n", ok ? "ALL PASS" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
