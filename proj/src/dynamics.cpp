#include "hk/dynamics.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "hk/error.hpp"
#include "hk/polymat.hpp"

namespace hk {

namespace {

bool all_constant(const Mat& a) {
  for (const auto& r : a)
    for (const auto& x : r)
      if (!x.is_constant()) return false;
  return true;
}

// Determinant with the cheapest exact method for the entry type.
Elem det_exact(const Mat& a) {
  size_t n = a.size();
  if (n == 0) return Elem::one(0);
  uint64_t p = a[0][0].p();
  if (all_constant(a) && p == 0) {
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j].constant_value();
    mpq_class d = 1;
    for (size_t c = 0; c < n; ++c) {
      size_t piv = n;
      for (size_t i = c; i < n; ++i)
        if (m[i][c] != 0) {
          piv = i;
          break;
        }
      if (piv == n) return Elem::zero(0);
      if (piv != c) {
        std::swap(m[piv], m[c]);
        d = -d;
      }
      d *= m[c][c];
      for (size_t i = c + 1; i < n; ++i) {
        if (m[i][c] == 0) continue;
        mpq_class f = m[i][c] / m[c][c];
        for (size_t j = c; j < n; ++j)
          if (m[c][j] != 0) m[i][j] -= f * m[c][j];
      }
    }
    return Elem(0, d);
  }
  if (all_constant(a)) return det(a);
  // Clear row denominators, run Bareiss over k[t], divide the scalings back out.
  PMat pm = clear_rows(a);
  Elem scale = Elem::one(p);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (a[i][j].is_zero()) continue;
      scale *= Elem(pm[i][j]) / a[i][j];
      break;
    }
  }
  return Elem(bareiss_det(pm)) / scale;
}

Elem macaulay_ratio(const std::vector<MPoly>& F, int d, bool& degenerate) {
  int n = static_cast<int>(F.size());
  uint64_t p = F[0].p();
  int D = n * (d - 1) + 1;
  std::vector<Exps> monos = monomials_of_degree(n, D);
  std::map<Exps, size_t> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  size_t R = monos.size();
  Mat M(R, Vec(R, Elem::zero(p)));
  std::vector<size_t> nonreduced;
  for (size_t r = 0; r < R; ++r) {
    const Exps& a = monos[r];
    int which = -1, count = 0;
    for (int i = 0; i < n; ++i) {
      if (a[i] >= d) {
        ++count;
        if (which < 0) which = i;
      }
    }
    if (count >= 2) nonreduced.push_back(r);
    Exps shift = a;
    shift[which] -= d;
    for (const auto& [e, c] : F[which].terms()) {
      Exps m(n);
      for (int i = 0; i < n; ++i) m[i] = e[i] + shift[i];
      M[r][index.at(m)] = c;
    }
  }
  Mat minor;
  for (size_t r : nonreduced) {
    Vec row;
    for (size_t c : nonreduced) row.push_back(M[r][c]);
    minor.push_back(std::move(row));
  }
  Elem dm = det_exact(minor);
  if (dm.is_zero()) {
    degenerate = true;
    return Elem::zero(p);
  }
  degenerate = false;
  return det_exact(M) / dm;
}

}  // namespace

Elem macaulay_resultant(const std::vector<MPoly>& forms) {
  int n = static_cast<int>(forms.size());
  if (n < 1) fail("DegenerateDegrees", "no forms");
  uint64_t p = forms[0].p();
  int d = -1;
  for (const auto& f : forms) {
    if (f.nvars() != n) fail("DegenerateDegrees", "need as many forms as variables");
    if (!f.is_homogeneous()) fail("DegenerateDegrees", "forms must be homogeneous");
    int fd = f.total_degree();
    if (fd < 0) return Elem::zero(p);
    if (d >= 0 && fd != d) fail("DegenerateDegrees", "forms of unequal degree");
    d = fd;
  }
  if (d == 0) return Elem::one(p);
  bool degenerate = false;
  Elem r = macaulay_ratio(forms, d, degenerate);
  if (!degenerate) return r;
  // Res(F o g) = det(g)^(d^n) Res(F); unipotent integer g keeps the value.
  std::mt19937_64 rng(12345);
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<std::vector<long>> g(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = 1;
    bool upper = attempt % 2 == 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((upper && j > i) || (!upper && j < i)) g[i][j] = static_cast<long>(rng() % 7) - 3;
    std::vector<MPoly> lin;
    for (int i = 0; i < n; ++i) {
      MPoly l(p, n);
      for (int j = 0; j < n; ++j)
        if (g[i][j]) l += MPoly::var(p, n, j).scale(Elem(p, g[i][j]));
      lin.push_back(l);
    }
    std::vector<MPoly> G;
    for (const auto& f : forms) G.push_back(f.compose(lin));
    r = macaulay_ratio(G, d, degenerate);
    if (!degenerate) return r;
  }
  fail("ResultantFailure", "Macaulay minor vanished under every tried change of coordinates");
}

Elem sylvester_resultant(const MPoly& f, const MPoly& g, int m, int n) {
  uint64_t p = f.p();
  auto coeffs = [&](const MPoly& h, int deg) {
    Vec c;
    for (int k = 0; k <= deg; ++k) c.push_back(h.coeff({deg - k, k}));
    return c;
  };
  Vec a = coeffs(f, m), b = coeffs(g, n);
  size_t s = m + n;
  Mat S(s, Vec(s, Elem::zero(p)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) S[i][i + k] = a[k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) S[n + i][i + k] = b[k];
  return det_exact(S);
}

Endo::Endo(BaseField K0, std::vector<MPoly> forms) : K(std::move(K0)), F(std::move(forms)) {
  N = static_cast<int>(F.size()) - 1;
  if (N < 1) fail("DegenerateDegrees", "an endomorphism needs at least two coordinate forms");
  d = -1;
  for (const auto& f : F) {
    if (f.nvars() != N + 1) fail("DegenerateDegrees", "forms must be in N+1 variables");
    if (!f.is_homogeneous()) fail("DegenerateDegrees", "forms must be homogeneous");
    if (f.is_zero()) continue;
    if (d >= 0 && f.total_degree() != d) fail("DegenerateDegrees", "forms of unequal degree");
    d = f.total_degree();
  }
  if (d < 0) fail("DegenerateDegrees", "all forms vanish");
  if (d < 2) fail("DegenerateDegrees", "degree must be at least 2");
}

Point Endo::apply(const Point& x) const {
  if (static_cast<int>(x.size()) != N + 1) fail("ArityMismatch", "point has wrong dimension");
  Point y;
  for (const auto& f : F) y.push_back(f.eval(x));
  bool nz = std::any_of(y.begin(), y.end(), [](const Elem& e) { return !e.is_zero(); });
  if (!nz) fail("NotMorphism", "map undefined at the point");
  return canonical_representative(K, y);
}

HeightValue Endo::height() const {
  std::vector<Elem> c;
  for (const auto& f : F)
    for (const auto& [e, x] : f.terms()) c.push_back(x);
  return vector_height(K, c);
}

Elem Endo::resultant() const {
  std::lock_guard<std::mutex> lock(cache_->m);
  if (!cache_->res) {
    std::vector<MPoly> forms = F;
    cache_->res = macaulay_resultant(forms);
  }
  return *cache_->res;
}

void Endo::require_morphism() const {
  if (!is_morphism()) fail("NotMorphism", "the forms share a common zero");
}

namespace {

// Primitive lift: integral over Q, polynomial with gcd 1 over function fields.
std::vector<MPoly> primitive_lift(const BaseField& K, const std::vector<MPoly>& F) {
  std::vector<Elem> all;
  for (const auto& f : F)
    for (const auto& [e, c] : f.terms()) all.push_back(c);
  // canonical_representative clears denominators and content; recover the scalar.
  std::vector<Elem> canon = canonical_representative(K, all);
  Elem s = canon[0] / all[0];
  std::vector<MPoly> out;
  for (const auto& f : F) out.push_back(f.scale(s));
  return out;
}

LocalConstants compute_local(const Endo& f) {
  f.require_morphism();
  const BaseField& K = f.K;
  uint64_t p = K.p;
  int n = f.N + 1, d = f.d;
  LocalConstants L;
  L.lift = primitive_lift(K, f.F);
  L.D = n * (d - 1) + 1;
  std::vector<Exps> rows = monomials_of_degree(n, L.D);
  std::vector<Exps> cols = monomials_of_degree(n, L.D - d);
  std::map<Exps, size_t> ridx;
  for (size_t i = 0; i < rows.size(); ++i) ridx[rows[i]] = i;
  size_t C = cols.size() * n;
  Mat M(rows.size(), Vec(C, Elem::zero(p)));
  for (int i = 0; i < n; ++i) {
    for (size_t b = 0; b < cols.size(); ++b) {
      for (const auto& [e, c] : L.lift[i].terms()) {
        Exps m(n);
        for (int k = 0; k < n; ++k) m[k] = e[k] + cols[b][k];
        M[ridx.at(m)][i * cols.size() + b] = c;
      }
    }
  }
  // Minimum-norm solution G = M^T (M M^T)^{-1} b, falling back to any solution.
  size_t R = rows.size();
  Mat MMt(R, Vec(R, Elem::zero(p)));
  for (size_t i = 0; i < R; ++i)
    for (size_t j = i; j < R; ++j) {
      Elem s = dot(M[i], M[j]);
      MMt[i][j] = s;
      MMt[j][i] = s;
    }
  Mat aug = MMt;
  for (size_t i = 0; i < R; ++i)
    for (int j = 0; j < n; ++j) {
      Exps pw(n, 0);
      pw[j] = L.D;
      aug[i].push_back(Elem(p, rows[i] == pw ? 1 : 0));
    }
  Echelon e = rref(aug, R + n);
  bool invertible = e.pivots.size() == R && e.pivots.back() == static_cast<int>(R) - 1;
  std::vector<Vec> sol(n);
  for (int j = 0; j < n; ++j) {
    if (invertible) {
      Vec w(R);
      for (size_t i = 0; i < R; ++i) w[i] = e.rows[i][R + j];
      Vec g(C, Elem::zero(p));
      for (size_t c = 0; c < C; ++c)
        for (size_t i = 0; i < R; ++i)
          if (!M[i][c].is_zero() && !w[i].is_zero()) g[c] += M[i][c] * w[i];
      sol[j] = std::move(g);
    } else {
      Vec b(R, Elem::zero(p));
      Exps pw(n, 0);
      pw[j] = L.D;
      b[ridx.at(pw)] = Elem::one(p);
      if (!solve(M, b, C, sol[j])) fail("NotMorphism", "no Nullstellensatz certificate at the Macaulay degree");
    }
  }
  L.G.assign(n, std::vector<MPoly>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      MPoly g(p, n);
      for (size_t b = 0; b < cols.size(); ++b) g.add_term(cols[b], sol[j][i * cols.size() + b]);
      L.G[j][i] = g;
    }
  if (!K.is_function_field()) {
    mpz_class den = 1;
    mpq_class B = 0, A = 0;
    for (int j = 0; j < n; ++j) {
      mpq_class row = 0;
      for (int i = 0; i < n; ++i)
        for (const auto& [ex, c] : L.G[j][i].terms()) {
          mpq_class v = c.constant_value();
          mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
          row += abs(v);
        }
      B = std::max(B, row);
    }
    for (const auto& fi : L.lift) {
      mpq_class s = 0;
      for (const auto& [ex, c] : fi.terms()) s += abs(c.constant_value());
      A = std::max(A, s);
    }
    L.Dfin_z = den;
    L.logA = Interval::log_of(A);
    L.logB = Interval::log_of(B);
    Interval cut = (L.logB + Interval::log_of(den)) / Interval(d - 1);
    L.cutoff = HeightValue(Interval::max(cut, Interval(0)));
  } else {
    UPoly den = UPoly::constant(p, 1);
    int degB = INT32_MIN, degA = INT32_MIN;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto& [ex, c] : L.G[j][i].terms()) {
          den = den / gcd(den, c.den()) * c.den();
          degB = std::max(degB, c.degree());
        }
    for (const auto& fi : L.lift)
      for (const auto& [ex, c] : fi.terms()) degA = std::max(degA, c.degree());
    L.Dfin_poly = den.monic();
    L.degA = degA;
    L.degB = degB;
    mpq_class cut(degB + L.Dfin_poly.deg(), d - 1);
    cut.canonicalize();
    L.cutoff = HeightValue(std::max(cut, mpq_class(0)));
  }
  return L;
}

}  // namespace

const LocalConstants& Endo::local() const {
  {
    std::lock_guard<std::mutex> lock(cache_->m);
    if (cache_->local) return *cache_->local;
  }
  auto L = std::make_unique<LocalConstants>(compute_local(*this));
  std::lock_guard<std::mutex> lock(cache_->m);
  if (!cache_->local) cache_->local = std::move(L);
  return *cache_->local;
}

IngramConstants ingram_constants(int N, int d, const BaseField& K) {
  if (N < 1 || d < 2) fail("InvalidArgument", "need N >= 1 and d >= 2");
  IngramConstants c;
  c.N = N;
  c.d = d;
  c.function_field = K.is_function_field();
  mpz_class dN;
  mpz_ui_pow_ui(dN.get_mpz_t(), d, N);
  c.c1 = (N + 1) * dN + 1;
  if (c.function_field) {
    c.c2 = 0;
    c.c0 = HeightValue(mpq_class(0));
  } else {
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), d + 2, N);
    e *= N + 1;
    if (!e.fits_ulong_p() || e > 100000000) fail("BudgetExceeded", "c2 exponent too large to expand");
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), d + 1, N);
    mpz_pow_ui(b.get_mpz_t(), mpz_class(dN + 1).get_mpz_t(), e.get_ui());
    c.c2 = (N + 1) * a * b;
    c.c0 = HeightValue(Interval::log_of(mpz_class(N + 1)) * Interval::from_mpq(mpq_class(7, 2)));
  }
  c.c1_h = HeightValue(mpq_class(c.c1));
  c.c2_h = HeightValue(mpq_class(c.c2));
  return c;
}

namespace {

struct ZTerm {
  std::vector<int> e;
  mpz_class c;
};

std::vector<ZTerm> integer_terms(const MPoly& f) {
  std::vector<ZTerm> out;
  for (const auto& [e, c] : f.terms()) out.push_back({e, c.constant_value().get_num()});
  return out;
}

// Evaluate integer forms at y modulo m (m == 0: exact).
std::vector<mpz_class> zeval(const std::vector<std::vector<ZTerm>>& F, const std::vector<mpz_class>& y, int d,
                             const mpz_class& m) {
  size_t n = y.size();
  std::vector<std::vector<mpz_class>> pw(n, std::vector<mpz_class>(d + 1));
  for (size_t i = 0; i < n; ++i) {
    pw[i][0] = 1;
    for (int k = 1; k <= d; ++k) {
      pw[i][k] = pw[i][k - 1] * y[i];
      if (m != 0) mpz_mod(pw[i][k].get_mpz_t(), pw[i][k].get_mpz_t(), m.get_mpz_t());
    }
  }
  std::vector<mpz_class> out;
  for (const auto& f : F) {
    mpz_class s = 0;
    for (const auto& t : f) {
      mpz_class v = t.c;
      for (size_t i = 0; i < n; ++i)
        if (t.e[i]) {
          v *= pw[i][t.e[i]];
          if (m != 0) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        }
      s += v;
    }
    if (m != 0) mpz_mod(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
    out.push_back(s);
  }
  return out;
}

std::vector<Interval> ieval(const std::vector<std::vector<ZTerm>>& F, const std::vector<Interval>& z, int d) {
  size_t n = z.size();
  std::vector<std::vector<Interval>> pw(n, std::vector<Interval>(d + 1));
  for (size_t i = 0; i < n; ++i) {
    pw[i][0] = Interval(1);
    for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * z[i];
  }
  std::vector<Interval> out;
  for (const auto& f : F) {
    Interval s(0);
    for (const auto& t : f) {
      Interval v = Interval::from_mpz(t.c);
      for (size_t i = 0; i < n; ++i)
        if (t.e[i]) v = v * pw[i][t.e[i]];
      s = s + v;
    }
    out.push_back(std::move(s));
  }
  return out;
}

Interval max_abs(const std::vector<Interval>& v) {
  Interval m = v[0].abs();
  for (size_t i = 1; i < v.size(); ++i) m = Interval::max(m, v[i].abs());
  return m;
}

int choose_terms(const Interval& C, int d, const mpq_class& eps, int budget) {
  Interval half_eps = Interval::from_mpq(eps / 2);
  Interval denom = Interval(d - 1);
  for (int K = 1; K <= budget; ++K) {
    denom = denom * Interval(d);
    if ((C / denom).certainly_le(half_eps)) return K;
  }
  fail("BudgetExceeded", "telescoping needs more terms than the budget allows");
}

CanonicalHeightResult canonical_height_q(const Endo& f, const Point& x, const mpq_class& eps, int budget) {
  const LocalConstants& L = f.local();
  int d = f.d;
  std::vector<std::vector<ZTerm>> F;
  for (const auto& fi : L.lift) F.push_back(integer_terms(fi));
  std::vector<mpz_class> y0 = primitive_integer_vector(x);
  mpz_class ymax = 0;
  for (const auto& c : y0) ymax = std::max(ymax, mpz_class(abs(c)));
  Interval logD = Interval::log_of(L.Dfin_z);
  Interval C = L.logA + L.logB + logD;
  int K = choose_terms(C, d, eps, budget);

  // Non-archimedean part: the gcds g_n, tracked modulo Dfin^(K+1).
  std::vector<mpz_class> g(K, mpz_class(1));
  if (L.Dfin_z > 1) {
    mpz_class M;
    mpz_pow_ui(M.get_mpz_t(), L.Dfin_z.get_mpz_t(), K + 1);
    std::vector<mpz_class> y = y0;
    for (auto& c : y) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
    for (int k = 0; k < K; ++k) {
      std::vector<mpz_class> Y = zeval(F, y, d, M);
      mpz_class gg = M;
      for (const auto& c : Y) mpz_gcd(gg.get_mpz_t(), gg.get_mpz_t(), c.get_mpz_t());
      g[k] = gg;
      M /= gg;
      for (size_t i = 0; i < y.size(); ++i) {
        mpz_divexact(y[i].get_mpz_t(), Y[i].get_mpz_t(), gg.get_mpz_t());
        mpz_mod(y[i].get_mpz_t(), y[i].get_mpz_t(), M.get_mpz_t());
      }
    }
  }

  mpq_class eps_q = eps;
  for (long prec = std::max<long>(default_precision(), 128); prec <= 16384; prec *= 2) {
    PrecisionScope scope(prec);
    Interval h0 = Interval::log_of(ymax);
    std::vector<Interval> z;
    for (const auto& c : y0) z.push_back(Interval::from_mpz(c) / Interval::from_mpz(ymax));
    Interval sum(0), dk(1);
    bool ok = true;
    for (int k = 0; k < K; ++k) {
      std::vector<Interval> w = ieval(F, z, d);
      Interval mw = max_abs(w), mz = max_abs(z);
      if (!mw.certainly_positive()) {
        ok = false;
        break;
      }
      Interval rho = mw.log() - Interval(d) * mz.log() - Interval::log_of(g[k]);
      dk = dk * Interval(d);
      sum = sum + rho / dk;
      for (auto& c : w) c = c / mw;
      z = std::move(w);
    }
    if (!ok) continue;
    Interval denom = dk * Interval(d - 1);
    Interval lo = -(L.logB + logD) / denom, hi = L.logA / denom;
    Interval value = h0 + sum;
    Interval result = Interval::hull(value + lo, value + hi);
    result = Interval::hull(result, result);
    if (result.width().certainly_le(Interval::from_mpq(eps_q))) {
      // Canonical heights are nonnegative; clip the enclosure at zero.
      if (result.certainly_negative()) fail("InternalError", "negative canonical height enclosure");
      return {HeightValue(result), K, prec};
    }
  }
  fail("BudgetExceeded", "interval iteration did not reach the requested accuracy");
}

// Truncate to degree < e.
UPoly trunc(const UPoly& f, int e) {
  if (f.deg() < e) return f;
  std::vector<mpq_class> c(f.coeffs().begin(), f.coeffs().begin() + e);
  return UPoly(f.p(), std::move(c));
}

size_t bit_size(const UPoly& f) {
  size_t s = 0;
  for (const auto& c : f.coeffs()) s += mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
  return s;
}

struct PTerm {
  std::vector<int> e;
  UPoly c;
};

std::vector<UPoly> peval(const std::vector<std::vector<PTerm>>& F, const std::vector<UPoly>& y, int d,
                         const std::function<UPoly(const UPoly&)>& red) {
  size_t n = y.size();
  uint64_t p = y[0].p();
  std::vector<std::vector<UPoly>> pw(n, std::vector<UPoly>(d + 1));
  for (size_t i = 0; i < n; ++i) {
    pw[i][0] = UPoly::constant(p, 1);
    for (int k = 1; k <= d; ++k) pw[i][k] = red(pw[i][k - 1] * y[i]);
  }
  std::vector<UPoly> out;
  for (const auto& f : F) {
    UPoly s(p);
    for (const auto& t : f) {
      UPoly v = t.c;
      for (size_t i = 0; i < n; ++i)
        if (t.e[i]) v = red(v * pw[i][t.e[i]]);
      s += v;
    }
    out.push_back(red(s));
  }
  return out;
}

CanonicalHeightResult canonical_height_ff(const Endo& f, const Point& x, const mpq_class& eps, int budget) {
  const LocalConstants& L = f.local();
  int d = f.d;
  uint64_t p = f.K.p;
  std::vector<Elem> canon = canonical_representative(f.K, x);
  std::vector<UPoly> y0;
  int m = -1;
  for (const auto& c : canon) {
    y0.push_back(c.num());
    m = std::max(m, c.num().deg());
  }
  int a = L.degA, b = L.degB, dD = L.Dfin_poly.deg();
  int C = a + b + dD;
  int K = 1;
  {
    mpz_class dk = d - 1;
    dk *= d;
    while (mpq_class(C) / mpq_class(dk) > eps / 2) {
      if (++K > budget) fail("BudgetExceeded", "telescoping needs more terms than the budget allows");
      dk *= d;
    }
  }
  std::vector<std::vector<PTerm>> F;
  for (const auto& fi : L.lift) {
    std::vector<PTerm> ts;
    for (const auto& [e, c] : fi.terms()) ts.push_back({e, c.num()});
    F.push_back(std::move(ts));
  }
  const size_t kMaxBits = 1u << 22;

  std::vector<int> gdeg(K, 0);
  if (dD > 0) {
    UPoly M = L.Dfin_poly.pow(K + 1);
    std::vector<UPoly> y;
    for (const auto& c : y0) y.push_back(c % M);
    for (int k = 0; k < K; ++k) {
      auto red = [&](const UPoly& u) { return u % M; };
      std::vector<UPoly> Y = peval(F, y, d, red);
      UPoly g = M;
      for (const auto& c : Y) g = gcd(g, c);
      gdeg[k] = g.deg();
      M = M / g;
      size_t bits = 0;
      for (size_t i = 0; i < y.size(); ++i) {
        y[i] = (Y[i] / g) % M;
        bits += bit_size(y[i]);
      }
      if (bits > kMaxBits) fail("BudgetExceeded", "coefficient growth in the finite-place tracker");
    }
  }

  // Infinite place: track s^deg y(1/s) modulo s^E.
  std::vector<std::vector<PTerm>> Fs;
  for (const auto& fi : L.lift) {
    std::vector<PTerm> ts;
    for (const auto& [e, c] : fi.terms()) ts.push_back({e, c.num().reverse(a)});
    Fs.push_back(std::move(ts));
  }
  int E = (K + 1) * std::max(a + b, 0) + 1;
  std::vector<UPoly> z;
  for (const auto& c : y0) z.push_back(trunc(c.reverse(m), E));
  mpq_class sum = 0;
  mpz_class dk = 1;
  for (int k = 0; k < K; ++k) {
    int e = E;
    auto red = [&](const UPoly& u) { return trunc(u, e); };
    std::vector<UPoly> w = peval(Fs, z, d, red);
    int v = E;
    for (const auto& c : w)
      if (!c.is_zero()) v = std::min(v, c.low_order());
    if (v >= E) fail("InternalError", "s-adic precision exhausted");
    size_t bits = 0;
    for (auto& c : w) {
      std::vector<mpq_class> cc;
      for (int i = v; i <= c.deg(); ++i) cc.push_back(c.coeff(i));
      c = UPoly(p, std::move(cc));
      bits += bit_size(c);
    }
    if (bits > kMaxBits) fail("BudgetExceeded", "coefficient growth in the infinite-place tracker");
    E -= v;
    z = std::move(w);
    dk *= d;
    sum += mpq_class(a - v - gdeg[k]) / mpq_class(dk);
  }
  sum.canonicalize();
  mpq_class value = mpq_class(m) + sum;
  mpq_class denom = mpq_class(dk * (d - 1));
  mpq_class lo = value - mpq_class(b + dD) / denom, hi = value + mpq_class(a) / denom;
  if (lo == hi) return {HeightValue(value), K, 0};
  return {HeightValue(Interval::hull(Interval::from_mpq(lo), Interval::from_mpq(hi))), K, 0};
}

}  // namespace

CanonicalHeightResult canonical_height(const Endo& f, const Point& x, const mpq_class& eps, int budget) {
  if (eps <= 0) fail("InvalidArgument", "eps must be positive");
  if (static_cast<int>(x.size()) != f.N + 1) fail("ArityMismatch", "point has wrong dimension");
  f.require_morphism();
  if (!f.K.is_function_field()) return canonical_height_q(f, x, eps, budget);
  return canonical_height_ff(f, x, eps, budget);
}

OrbitRecord orbit(const Endo& f, const Point& x, int max_steps) {
  f.require_morphism();
  OrbitRecord r;
  std::map<Point, int> seen;
  Point cur = canonical_representative(f.K, x);
  r.points.push_back(cur);
  seen[cur] = 0;
  for (int k = 1; k <= max_steps; ++k) {
    cur = f.apply(cur);
    r.points.push_back(cur);
    auto it = seen.find(cur);
    if (it != seen.end()) {
      r.tail_length = it->second;
      r.cycle_length = k - it->second;
      return r;
    }
    seen[cur] = k;
  }
  r.truncated = true;
  return r;
}

namespace {

bool above_cutoff(const BaseField& K, const Point& x, const HeightValue& cutoff) {
  HeightValue h = weil_height(K, x);
  if (h.is_exact() && cutoff.is_exact()) return h.exact() > cutoff.exact();
  return cutoff.interval().certainly_lt(h.interval());
}

bool constant_data(const Endo& f, const Point& x) {
  for (const auto& c : x)
    if (!c.is_constant()) return false;
  for (const auto& fi : f.F)
    for (const auto& [e, c] : fi.terms())
      if (!c.is_constant()) return false;
  return true;
}

}  // namespace

bool is_preperiodic(const Endo& f, const Point& x, int budget) {
  f.require_morphism();
  if (f.K.kind == BaseField::Kind::QT && constant_data(f, x)) {
    // Isotrivial data over Q(t): decide over Q, where heights separate points.
    BaseField Q = BaseField::rationals();
    std::vector<MPoly> G;
    for (const auto& fi : f.F) G.push_back(fi);
    return is_preperiodic(Endo(Q, G), x, budget);
  }
  const HeightValue& cut = f.local().cutoff;
  std::set<Point> seen;
  Point cur = canonical_representative(f.K, x);
  for (int k = 0; k <= budget; ++k) {
    if (above_cutoff(f.K, cur, cut)) return false;
    if (!seen.insert(cur).second) return true;
    cur = f.apply(cur);
  }
  fail("BudgetExceeded", "orbit neither repeated nor left the height cutoff within the budget");
}

namespace {

bool point_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// All polynomials of degree <= B over F_p, or with coefficients in {-1,0,1} over Q.
std::vector<UPoly> small_polys(uint64_t p, int B) {
  std::vector<UPoly> out;
  std::vector<long> digits;
  long base = p ? static_cast<long>(p) : 3;
  long total = 1;
  for (int i = 0; i <= B; ++i) {
    total *= base;
    if (total > 2000000) fail("BoundTooLarge", "enumeration exceeds the budget");
  }
  for (long idx = 0; idx < total; ++idx) {
    std::vector<mpq_class> c;
    long v = idx;
    for (int i = 0; i <= B; ++i) {
      long dgt = v % base;
      v /= base;
      c.emplace_back(p ? dgt : dgt - 1);
    }
    out.emplace_back(p, std::move(c));
  }
  return out;
}

}  // namespace

CensusReport preperiodic_census_on_curve(const Endo& f, const MPoly& curve, const mpz_class& bound, int workers,
                                         long budget) {
  if (f.N != 2) fail("DegenerateDegrees", "census needs an endomorphism of the projective plane");
  if (curve.nvars() != 3 || !curve.is_homogeneous() || curve.is_zero())
    fail("DegenerateDegrees", "curve must be a nonzero form in three variables");
  if (bound < 0) fail("InvalidArgument", "enumeration bound must be nonnegative");
  f.require_morphism();
  CensusReport rep;
  rep.cutoff = f.local().cutoff;
  rep.enumeration_bound = bound;
  workers = std::max(1, workers);
  std::vector<Point> found;
  std::mutex mu;
  std::exception_ptr err;

  if (!f.K.is_function_field()) {
    if (!bound.fits_slong_p()) fail("BoundTooLarge", "enumeration bound too large");
    long B = bound.get_si();
    double size = std::pow(2.0 * B + 1, 3);
    if (size > static_cast<double>(budget)) fail("BoundTooLarge", "enumeration exceeds the budget");
    std::vector<MPoly> cv = primitive_lift(f.K, {curve});
    std::vector<std::vector<ZTerm>> Fc = {integer_terms(cv[0])};
    int cd = curve.total_degree();
    auto work = [&](int w) {
      try {
        std::vector<Point> local;
        long count = 0;
        for (long a = 0; a <= B; ++a) {
          if (a % workers != w) continue;
          for (long b = (a == 0 ? 0 : -B); b <= B; ++b) {
            for (long c = (a == 0 && b == 0 ? 1 : -B); c <= B; ++c) {
              mpz_class g;
              mpz_gcd_ui(g.get_mpz_t(), mpz_class(a).get_mpz_t(), std::labs(b));
              mpz_gcd_ui(g.get_mpz_t(), g.get_mpz_t(), std::labs(c));
              if (g != 1) continue;
              ++count;
              std::vector<mpz_class> y = {a, b, c};
              if (zeval(Fc, y, cd, 0)[0] != 0) continue;
              Point P = {Elem(0, a), Elem(0, b), Elem(0, c)};
              if (is_preperiodic(f, P)) local.push_back(canonical_representative(f.K, P));
            }
          }
        }
        std::lock_guard<std::mutex> lock(mu);
        found.insert(found.end(), local.begin(), local.end());
        rep.candidates += count;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        err = std::current_exception();
      }
    };
    std::vector<std::thread> ts;
    for (int w = 0; w < workers; ++w) ts.emplace_back(work, w);
    for (auto& t : ts) t.join();
    if (err) std::rethrow_exception(err);
    Interval logB = B > 0 ? Interval::log_of(mpz_class(B)) : Interval(-1);
    rep.verified_complete = B > 0 && rep.cutoff.interval().certainly_le(logB);
    rep.note = "rational points only; enumeration box max|coordinate| <= " + bound.get_str();
  } else {
    if (!bound.fits_slong_p() || bound > 64) fail("BoundTooLarge", "enumeration bound too large");
    int B = static_cast<int>(bound.get_si());
    std::vector<UPoly> polys = small_polys(f.K.p, B);
    double size = std::pow(static_cast<double>(polys.size()), 3);
    if (size > static_cast<double>(budget)) fail("BoundTooLarge", "enumeration exceeds the budget");
    auto work = [&](int w) {
      try {
        std::set<Point> local;
        long count = 0;
        for (size_t i = 0; i < polys.size(); ++i) {
          if (static_cast<int>(i % workers) != w) continue;
          for (const auto& q : polys)
            for (const auto& r : polys) {
              Point P = {Elem(polys[i]), Elem(q), Elem(r)};
              if (P[0].is_zero() && P[1].is_zero() && P[2].is_zero()) continue;
              ++count;
              if (!curve.eval(P).is_zero()) continue;
              Point c = canonical_representative(f.K, P);
              if (local.count(c)) continue;
              if (is_preperiodic(f, c)) local.insert(c);
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        found.insert(found.end(), local.begin(), local.end());
        rep.candidates += count;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        err = std::current_exception();
      }
    };
    std::vector<std::thread> ts;
    for (int w = 0; w < workers; ++w) ts.emplace_back(work, w);
    for (auto& t : ts) t.join();
    if (err) std::rethrow_exception(err);
    if (f.K.kind == BaseField::Kind::FpT) {
      rep.verified_complete = mpq_class(B) >= rep.cutoff.exact();
      rep.note = "rational points only; coordinates of degree <= " + bound.get_str();
    } else {
      rep.verified_complete = false;
      rep.note = "rational points only; coordinates of degree <= " + bound.get_str() +
                 " with coefficients in {-1,0,1}; Q(t) has infinitely many points of bounded height";
    }
  }
  std::sort(found.begin(), found.end(), point_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  rep.points = std::move(found);
  return rep;
}

}  // namespace hk
