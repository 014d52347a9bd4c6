#include "hk/chow.hpp"

#include <algorithm>
#include <random>

#include "hk/error.hpp"
#include "hk/factor.hpp"

namespace hk {

namespace {

// Univariate restriction f(x) = F(x, a_1, ..., a_{n-1}, 1) as a vector of coefficients in K.
std::vector<Elem> restrict_line(const MPoly& F, const std::vector<Elem>& a) {
  int e = F.total_degree();
  uint64_t p = F.p();
  std::vector<Elem> c(e + 1, Elem::zero(p));
  for (const auto& [ex, v] : F.terms()) {
    Elem term = v;
    for (size_t j = 1; j + 1 < ex.size(); ++j)
      if (ex[j]) term *= a[j - 1].pow(ex[j]);
    c[ex[0]] += term;
  }
  return c;
}

mpq_class rand_small(std::mt19937_64& rng, uint64_t p, int span) {
  long v = static_cast<long>(rng() % (2 * span + 1)) - span;
  return p ? reduce_mod(p, v) : mpq_class(v);
}

}  // namespace

Irreducibility check_irreducible(const BaseField& K, const MPoly& F) {
  int e = F.total_degree();
  int nv = F.nvars();
  uint64_t p = K.p;
  if (e < 1 || !F.is_homogeneous()) return Irreducibility::Unverified;
  if (e == 1) return Irreducibility::Certified;
  if (e == 2 && p != 2) {
    Mat S(nv, Vec(nv, Elem::zero(p)));
    Elem half = Elem(p, 1) / Elem(p, 2);
    for (const auto& [ex, c] : F.terms()) {
      std::vector<int> idx;
      for (int i = 0; i < nv; ++i)
        for (int k = 0; k < ex[i]; ++k) idx.push_back(i);
      if (idx[0] == idx[1]) {
        S[idx[0]][idx[0]] = c;
      } else {
        S[idx[0]][idx[1]] = c * half;
        S[idx[1]][idx[0]] = c * half;
      }
    }
    Elem dt = det(S);
    if (nv >= 3 && !dt.is_zero()) return Irreducibility::Certified;
    if (nv == 2 && !is_square(-dt)) return Irreducibility::Certified;
  }
  std::mt19937_64 rng(0x1dea + e);
  for (int attempt = 0; attempt < 40; ++attempt) {
    // Shear x_j -> x_j + c_j x_0 so the x_0^e coefficient is a nonzero constant.
    std::vector<MPoly> vals;
    for (int j = 0; j < nv; ++j) {
      MPoly v = MPoly::var(p, nv, j);
      if (j > 0 && attempt > 0) {
        Elem c(p, rand_small(rng, p, 3));
        v += MPoly::var(p, nv, 0).scale(c);
      }
      vals.push_back(v);
    }
    MPoly G = F.compose(vals);
    Exps top(nv, 0);
    top[0] = e;
    if (G.coeff(top).is_zero()) continue;
    std::vector<Elem> a;
    for (int j = 1; j + 1 < nv; ++j) a.emplace_back(p, rand_small(rng, p, 5));
    std::vector<Elem> f = restrict_line(G, a);
    if (!K.is_function_field()) {
      std::vector<mpq_class> c;
      for (const auto& x : f) c.push_back(x.constant_value());
      if (is_irreducible(UPoly(0, c))) return Irreducibility::Certified;
      continue;
    }
    mpq_class t0 = rand_small(rng, p, 20);
    bool bad = false;
    std::vector<mpq_class> c;
    for (const auto& x : f) {
      if (x.den().eval(t0) == 0) {
        bad = true;
        break;
      }
      c.push_back(x.eval(t0));
    }
    if (bad || c.back() == 0) continue;
    if (is_irreducible(UPoly(p, c))) return Irreducibility::Certified;
  }
  return Irreducibility::Unverified;
}

Hypersurface::Hypersurface(BaseField K0, MPoly F0) : K(std::move(K0)), F(std::move(F0)) {
  n = F.nvars() - 1;
  if (n < 1) fail("DegenerateDegrees", "hypersurface needs at least two variables");
  if (F.is_zero() || !F.is_homogeneous() || F.total_degree() < 1)
    fail("DegenerateDegrees", "hypersurface form must be homogeneous of positive degree");
  irreducibility = check_irreducible(K, F);
}

MPoly normalize_content(const BaseField& K, const MPoly& f) {
  if (f.is_zero()) fail("AllZero", "zero form");
  std::vector<Elem> c;
  for (const auto& [e, x] : f.terms()) c.push_back(x);
  std::vector<Elem> canon = canonical_representative(K, c);
  return f.scale(canon[0] / c[0]);
}

namespace {

MPoly det_laplace(const std::vector<std::vector<MPoly>>& a, std::vector<int> cols, size_t row) {
  if (row == a.size()) return MPoly::constant(a[0][0].p(), a[0][0].nvars(), Elem::one(a[0][0].p()));
  MPoly s(a[0][0].p(), a[0][0].nvars());
  for (size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> rest = cols;
    rest.erase(rest.begin() + k);
    MPoly term = a[row][cols[k]] * det_laplace(a, rest, row + 1);
    if (k % 2) s -= term;
    else s += term;
  }
  return s;
}

}  // namespace

ChowForm chow_form(const Hypersurface& X) {
  int n = X.n;
  uint64_t p = X.K.p;
  int nu = n * (n + 1);
  std::vector<std::vector<MPoly>> U(n, std::vector<MPoly>(n + 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= n; ++j) U[i][j] = MPoly::var(p, nu, i * (n + 1) + j);
  // The n generic hyperplanes meet in the point of signed maximal minors.
  std::vector<MPoly> pt;
  for (int j = 0; j <= n; ++j) {
    std::vector<int> cols;
    for (int k = 0; k <= n; ++k)
      if (k != j) cols.push_back(k);
    MPoly m = det_laplace(U, cols, 0);
    pt.push_back(j % 2 ? -m : m);
  }
  ChowForm ch;
  ch.n = n;
  ch.r = n;
  ch.degree = X.degree();
  ch.poly = normalize_content(X.K, X.F.compose(pt));
  return ch;
}

ChowForm chow_form(const BaseField& K, const std::vector<Point>& points) {
  if (points.empty()) fail("DegenerateDegrees", "empty zero-cycle");
  int n = static_cast<int>(points[0].size()) - 1;
  uint64_t p = K.p;
  MPoly prod = MPoly::constant(p, n + 1, Elem::one(p));
  for (const auto& x : points) {
    if (static_cast<int>(x.size()) != n + 1) fail("ArityMismatch", "points of different dimensions");
    MPoly l(p, n + 1);
    for (int j = 0; j <= n; ++j)
      if (!x[j].is_zero()) l += MPoly::var(p, n + 1, j).scale(x[j]);
    if (l.is_zero()) fail("AllZero", "all coordinates vanish");
    prod *= l;
  }
  ChowForm ch;
  ch.n = n;
  ch.r = 1;
  ch.degree = static_cast<int>(points.size());
  ch.poly = normalize_content(K, prod);
  return ch;
}

HeightValue philippon_height(const BaseField& K, const ChowForm& ch) {
  std::vector<Elem> c;
  for (const auto& [e, x] : ch.poly.terms()) c.push_back(x);
  return vector_height(K, c);
}

HeightValue philippon_height(const Hypersurface& X) { return philippon_height(X.K, chow_form(X)); }

namespace {

size_t matrix_terms(const std::vector<std::vector<MPoly>>& a) {
  size_t s = 0;
  for (const auto& r : a)
    for (const auto& x : r) s += x.size();
  return s;
}

MPoly bareiss_mpoly(std::vector<std::vector<MPoly>> a, uint64_t p, int nv, long budget) {
  size_t n = a.size();
  MPoly one = MPoly::constant(p, nv, Elem::one(p));
  if (n == 0) return one;
  MPoly prev = one;
  bool neg = false;
  long work = 0;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      size_t piv = n;
      for (size_t i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv == n) return MPoly(p, nv);
      std::swap(a[k], a[piv]);
      neg = !neg;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        // Term products of this update; caps the work before an entry can blow up.
        work += static_cast<long>(a[k][k].size() * a[i][j].size() + a[i][k].size() * a[k][j].size());
        if (work > budget * 2000) fail("BudgetExceeded", "eliminant expansion too large");
        MPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        MPoly q;
        if (!divide_exact(num, prev, q)) fail("InternalError", "Bareiss division was not exact");
        a[i][j] = std::move(q);
      }
      a[i][k] = MPoly(p, nv);
      if (static_cast<long>(matrix_terms(a)) > budget) fail("BudgetExceeded", "eliminant expansion too large");
    }
    prev = a[k][k];
  }
  return neg ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

}  // namespace

MPoly parametric_resultant(const std::vector<ParamForm>& forms, const std::vector<int>& degs, int nparams,
                           long budget) {
  int n = static_cast<int>(forms.size());
  if (n < 2 || static_cast<int>(degs.size()) != n) fail("DegenerateDegrees", "need n forms in n variables");
  uint64_t p = 0;
  for (const auto& f : forms)
    for (const auto& [e, c] : f) p = c.p();
  int D = 1;
  for (int d : degs) {
    if (d < 1) fail("DegenerateDegrees", "forms must have positive degree");
    D += d - 1;
  }
  std::vector<Exps> monos = monomials_of_degree(n, D);
  std::map<Exps, size_t> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  size_t R = monos.size();
  std::vector<std::vector<MPoly>> M(R, std::vector<MPoly>(R, MPoly(p, nparams)));
  std::vector<size_t> nonreduced;
  for (size_t r = 0; r < R; ++r) {
    const Exps& a = monos[r];
    int which = -1, count = 0;
    for (int i = 0; i < n; ++i)
      if (a[i] >= degs[i]) {
        ++count;
        if (which < 0) which = i;
      }
    if (count >= 2) nonreduced.push_back(r);
    Exps shift = a;
    shift[which] -= degs[which];
    for (const auto& [e, c] : forms[which]) {
      Exps m(n);
      for (int i = 0; i < n; ++i) m[i] = e[i] + shift[i];
      M[r][index.at(m)] = c;
    }
  }
  std::vector<std::vector<MPoly>> minor;
  for (size_t r : nonreduced) {
    std::vector<MPoly> row;
    for (size_t c : nonreduced) row.push_back(M[r][c]);
    minor.push_back(std::move(row));
  }
  MPoly dm = bareiss_mpoly(minor, p, nparams, budget);
  if (dm.is_zero()) fail("ResultantFailure", "Macaulay minor vanishes; order generic forms first");
  MPoly dM = bareiss_mpoly(M, p, nparams, budget);
  MPoly q;
  if (!divide_exact(dM, dm, q)) fail("InternalError", "Macaulay quotient was not exact");
  return q;
}

DegreeDHeight degree_d_height(const Hypersurface& X, const std::vector<int>& dtuple, long budget) {
  if (!X.K.is_function_field()) fail("UnsupportedField", "degree-d heights need a function field");
  int n = X.n;
  if (n > 2) fail("UnsupportedDimension", "degree-d heights are limited to n <= 2");
  if (static_cast<int>(dtuple.size()) != n) fail("DegenerateDegrees", "need one degree per generic form");
  for (int d : dtuple)
    if (d < 1 || d > 3) fail("DegenerateDegrees", "degrees must lie in 1..3");
  uint64_t p = X.K.p;
  int nparams = 0;
  std::vector<std::vector<Exps>> mons;
  for (int d : dtuple) {
    mons.push_back(monomials_of_degree(n + 1, d));
    nparams += static_cast<int>(mons.back().size());
  }
  std::vector<ParamForm> forms;
  std::vector<int> degs;
  int v = 0;
  for (size_t i = 0; i < dtuple.size(); ++i) {
    ParamForm f;
    for (const auto& m : mons[i]) f[m] = MPoly::var(p, nparams, v++);
    forms.push_back(std::move(f));
    degs.push_back(dtuple[i]);
  }
  ParamForm fx;
  for (const auto& [e, c] : X.F.terms()) fx[e] = MPoly::constant(p, nparams, c);
  forms.push_back(std::move(fx));
  degs.push_back(X.degree());
  DegreeDHeight out;
  out.eliminant = normalize_content(X.K, parametric_resultant(forms, degs, nparams, budget));
  std::vector<Elem> c;
  for (const auto& [e, x] : out.eliminant.terms()) c.push_back(x);
  out.value = vector_height(X.K, c);
  long prod = 1;
  for (int d : dtuple) prod *= d;
  out.expected = philippon_height(X).scale(prod);
  out.identity_holds = out.value.exact() == out.expected.exact();
  return out;
}

PushforwardResult pushforward(const Endo& f, const Hypersurface& X) {
  if (f.N != 2 || X.n != 2) fail("UnsupportedDimension", "pushforward is implemented for plane curves");
  if (f.K != X.K) fail("FieldMismatch", "map and curve over different fields");
  if (X.irreducibility != Irreducibility::Certified) fail("NotIrreducible", "curve irreducibility not certified");
  f.require_morphism();
  uint64_t p = f.K.p;
  int e = X.degree(), d = f.d;
  int top = d * e;
  std::vector<std::vector<MPoly>> pw(3);
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(MPoly::constant(p, 3, Elem::one(p)));
    for (int k = 1; k <= top; ++k) pw[i].push_back(reduce(pw[i].back() * f.F[i], {X.F}));
  }
  // Smallest degree with a form G such that G(F_0, F_1, F_2) lies in (X.F).
  for (int deg = 1; deg <= top; ++deg) {
    std::vector<Exps> betas = monomials_of_degree(3, deg);
    std::vector<MPoly> red;
    std::map<Exps, size_t> rows;
    for (const auto& b : betas) {
      MPoly m = reduce(pw[0][b[0]] * pw[1][b[1]], {X.F});
      m = reduce(m * pw[2][b[2]], {X.F});
      for (const auto& [ex, c] : m.terms()) rows.emplace(ex, rows.size());
      red.push_back(std::move(m));
    }
    Mat A(rows.size(), Vec(betas.size(), Elem::zero(p)));
    for (size_t j = 0; j < betas.size(); ++j)
      for (const auto& [ex, c] : red[j].terms()) A[rows.at(ex)][j] = c;
    Mat ker = right_kernel(A, betas.size());
    if (ker.empty()) continue;
    if (ker.size() > 1) fail("IrreducibilityLost", "image form of minimal degree is not unique");
    MPoly G(p, 3);
    for (size_t j = 0; j < betas.size(); ++j) G.add_term(betas[j], ker[0][j]);
    if (top % deg != 0) fail("IrreducibilityLost", "image degree fails the degree identity");
    PushforwardResult r;
    r.image.K = X.K;
    r.image.n = 2;
    r.image.F = normalize_content(X.K, G);
    r.image.irreducibility = Irreducibility::Certified;
    r.fiber_degree = top / deg;
    return r;
  }
  fail("IrreducibilityLost", "no image form up to degree d * deg X");
}

HypersurfaceHeight canonical_height_hypersurface(const Endo& f, const Hypersurface& X, int m) {
  if (m < 0) fail("InvalidArgument", "iteration count must be nonnegative");
  f.require_morphism();
  HypersurfaceHeight out;
  out.chain.push_back(X);
  for (int k = 0; k < m; ++k) out.chain.push_back(pushforward(f, out.chain.back()).image);
  const Hypersurface& Y = out.chain.back();
  mpz_class dm;
  mpz_ui_pow_ui(dm.get_mpz_t(), f.d, m);
  out.center = philippon_height(Y).scale(mpq_class(1) / mpq_class(dm * Y.degree()));
  IngramConstants c = ingram_constants(f.N, f.d, f.K);
  HeightValue slack = c.c1_h * f.height() + c.c2_h + c.c0;
  out.tail = slack.scale(mpq_class(X.dimension() + 1) / mpq_class(dm));
  if (out.tail.is_exact() && out.center.is_exact() && out.tail.exact() == 0) {
    out.value = out.center;
  } else {
    HeightValue lo = out.center - out.tail, hi = out.center + out.tail;
    out.value = HeightValue(Interval::hull(lo.interval(), hi.interval()));
  }
  return out;
}

namespace {

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t p) { return static_cast<unsigned __int128>(a) * b % p; }

uint64_t powmod64(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod64(r, a, p);
    a = mulmod64(a, a, p);
    e >>= 1;
  }
  return r;
}

// Tonelli-Shanks; a must be a quadratic residue mod odd p.
uint64_t sqrt_mod(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  uint64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  uint64_t z = 2;
  while (powmod64(z, (p - 1) / 2, p) != p - 1) ++z;
  uint64_t m = s, c = powmod64(z, q, p), t = powmod64(a, q, p), r = powmod64(a, (q + 1) / 2, p);
  while (t != 1) {
    uint64_t i = 0, tt = t;
    while (tt != 1) tt = mulmod64(tt, tt, p), ++i;
    uint64_t b = c;
    for (uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod64(b, b, p);
    m = i;
    c = mulmod64(b, b, p);
    t = mulmod64(t, c, p);
    r = mulmod64(r, b, p);
  }
  return r;
}

std::optional<UPoly> sqrt_poly(const UPoly& f) {
  uint64_t p = f.p();
  if (f.is_zero()) return f;
  UFactorization fa = factor(f);
  mpq_class unit;
  if (p == 0) {
    if (!is_square_rational(fa.unit)) return std::nullopt;
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), fa.unit.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), fa.unit.get_den_mpz_t());
    unit = mpq_class(a, b);
  } else {
    uint64_t u = mpz_class(fa.unit.get_num()).get_ui();
    if (powmod64(u, (p - 1) / 2, p) > 1) return std::nullopt;
    unit = sqrt_mod(u, p);
  }
  UPoly r = UPoly::constant(p, unit);
  for (const auto& [g, k] : fa.factors) {
    if (k % 2) return std::nullopt;
    r *= g.pow(k / 2);
  }
  return r;
}

std::optional<Elem> sqrt_elem(const Elem& x) {
  auto a = sqrt_poly(x.num() * x.den());
  if (!a) return std::nullopt;
  return Elem(*a) / Elem(x.den());
}

}  // namespace

SlicingReport slicing_minimum_test(const Hypersurface& X, int samples, uint64_t seed) {
  if (!X.K.is_function_field()) fail("UnsupportedField", "slicing test needs a function field");
  if (X.n != 2) fail("UnsupportedDimension", "slicing test expects a plane curve");
  int e = X.degree();
  uint64_t p = X.K.p;
  if (e > 2) fail("UnsupportedDimension", "slicing test handles curves of degree at most 2");
  if (e == 2 && p == 2) fail("UnsupportedField", "quadratic slices need odd characteristic");
  SlicingReport rep;
  rep.normalized_height = philippon_height(X).scale(mpq_class(1, e));
  rep.holds = true;
  std::mt19937_64 rng(seed);
  int guard = 0;
  while (static_cast<int>(rep.slices.size()) < samples) {
    if (++guard > 50 * samples + 100) fail("DegenerateSlice", "could not find lines in general position");
    std::vector<Elem> line;
    for (int j = 0; j < 3; ++j) line.emplace_back(p, rand_small(rng, p, 4));
    int k = -1;
    for (int j = 2; j >= 0; --j)
      if (!line[j].is_zero()) {
        k = j;
        break;
      }
    if (k < 0) continue;
    std::vector<int> free;
    for (int j = 0; j < 3; ++j)
      if (j != k) free.push_back(j);
    // x_k = -(sum over free j of a_j x_j) / a_k
    std::vector<MPoly> vals(3);
    MPoly xk(p, 3);
    for (int j : free) {
      vals[j] = MPoly::var(p, 3, j);
      if (!line[j].is_zero()) xk -= MPoly::var(p, 3, j).scale(line[j] / line[k]);
    }
    vals[k] = xk;
    MPoly g = X.F.compose(vals);
    auto coeff = [&](int a, int b) {
      Exps ex(3, 0);
      ex[free[0]] = a;
      ex[free[1]] = b;
      return g.coeff(ex);
    };
    auto lift = [&](const Elem& u, const Elem& v) {
      Point P(3, Elem::zero(p));
      P[free[0]] = u;
      P[free[1]] = v;
      P[k] = -(line[free[0]] * u + line[free[1]] * v) / line[k];
      return canonical_representative(X.K, P);
    };
    Slice s;
    s.line = line;
    if (g.is_zero()) {
      ++rep.resampled;
      continue;
    }
    if (e == 1) {
      Elem A = coeff(1, 0), B = coeff(0, 1);
      Point P = lift(-B, A);
      s.points.push_back({P, "rational", weil_height(X.K, P)});
    } else {
      Elem A = coeff(2, 0), B = coeff(1, 1), C = coeff(0, 2);
      Elem disc = B * B - Elem(p, 4) * A * C;
      if (disc.is_zero()) {
        ++rep.resampled;
        continue;
      }
      std::vector<std::pair<Elem, Elem>> roots;
      std::optional<Elem> r = sqrt_elem(disc);
      if (r) {
        if (A.is_zero()) {
          roots.push_back({Elem::one(p), Elem::zero(p)});
          roots.push_back({-C, B});
        } else {
          roots.push_back({-B + *r, Elem(p, 2) * A});
          roots.push_back({-B - *r, Elem(p, 2) * A});
        }
        for (const auto& [u, v] : roots) {
          Point P = lift(u, v);
          s.points.push_back({P, "rational", weil_height(X.K, P)});
        }
      } else {
        // Conjugate roots share one height; by Gauss's lemma they sum to h(A, B, C).
        HeightValue h = weil_height(X.K, {A, B, C}).scale(mpq_class(1, 2));
        std::string desc = "conjugate pair over a quadratic extension";
        s.points.push_back({std::nullopt, desc, h});
        s.points.push_back({std::nullopt, desc, h});
      }
    }
    s.min_height = s.points[0].height;
    for (const auto& pt : s.points)
      if (pt.height.exact() < s.min_height.exact()) s.min_height = pt.height;
    s.holds = s.min_height.exact() <= rep.normalized_height.exact();
    rep.holds = rep.holds && s.holds;
    rep.slices.push_back(std::move(s));
  }
  return rep;
}

}  // namespace hk
