#include "hk/ffsiegel.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "hk/error.hpp"

namespace hk {

namespace {

mpz_class binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void require_ff(const BaseField& K) {
  if (!K.is_function_field()) fail("UnsupportedField", "function-field geometry of numbers needs F_p(t) or Q(t)");
}

}  // namespace

SubspaceFF::SubspaceFF(BaseField K0, int amb, Mat rows) : K(std::move(K0)), ambient(amb), basis(std::move(rows)) {
  require_ff(K);
  for (const auto& r : basis)
    if (static_cast<int>(r.size()) != ambient) fail("ArityMismatch", "basis vector of wrong length");
  if (rank_fast(basis, ambient) != dim()) fail("RankDeficient", "basis vectors are linearly dependent");
}

HeightValue schmidt_height(const SubspaceFF& V) {
  if (V.dim() == 0) return HeightValue(mpq_class(0));
  PVec minors = maximal_minors(clear_rows(V.basis), V.ambient);
  return HeightValue(mpq_class(poly_vector_height(minors)));
}

PMat reduced_basis(const SubspaceFF& V) {
  if (V.dim() == 0) return {};
  PMat B = saturate(V.basis, V.ambient);
  weak_popov(B);
  std::stable_sort(B.begin(), B.end(), [](const PVec& a, const PVec& b) { return row_degree(a) < row_degree(b); });
  if (static_cast<int>(B.size()) != V.dim()) fail("InternalError", "saturated basis has the wrong rank");
  return B;
}

int schmidt_height_reduced(const SubspaceFF& V) {
  int s = 0;
  for (int d : row_degrees(reduced_basis(V))) s += d;
  return s;
}

SubspaceFF orthogonal_complement(const SubspaceFF& V) {
  uint64_t p = V.K.p;
  if (V.dim() == 0) {
    Mat id(V.ambient, Vec(V.ambient, Elem::zero(p)));
    for (int i = 0; i < V.ambient; ++i) id[i][i] = Elem::one(p);
    return SubspaceFF(V.K, V.ambient, id);
  }
  return SubspaceFF(V.K, V.ambient, right_kernel(V.basis, V.ambient));
}

SiegelChain siegel_chain(const SubspaceFF& V) {
  PMat B = reduced_basis(V);
  SiegelChain c;
  c.degrees = row_degrees(B);
  for (size_t i = 1; i <= B.size(); ++i) {
    PMat head(B.begin(), B.begin() + i);
    c.W.emplace_back(V.K, V.ambient, to_elem(head));
  }
  return c;
}

namespace {

PVec clear_vector(const Vec& q) { return clear_rows(Mat{q})[0]; }

UPoly pairing(const PVec& q, const PVec& b) {
  UPoly s(q.empty() ? 0 : q[0].p());
  for (size_t j = 0; j < q.size(); ++j)
    if (!q[j].is_zero() && !b[j].is_zero()) s += q[j] * b[j];
  return s;
}

}  // namespace

HeightValue h_tilde(const SubspaceFF& V, const Vec& q) {
  if (static_cast<int>(q.size()) != V.ambient) fail("ArityMismatch", "linear form of wrong length");
  if (V.dim() == 0) fail("VanishesOnV", "zero subspace");
  PMat B = reduced_basis(V);
  PVec qc = clear_vector(q);
  uint64_t p = V.K.p;
  // Predictable degrees give the sup at infinity; saturation gives the finite places.
  std::optional<int> top;
  UPoly g(p);
  for (const auto& b : B) {
    UPoly v = pairing(qc, b);
    if (v.is_zero()) continue;
    int s = v.deg() - row_degree(b);
    top = top ? std::max(*top, s) : s;
    g = gcd(g, v);
  }
  if (!top) fail("VanishesOnV", "linear form vanishes identically on the subspace");
  return HeightValue(mpq_class(*top - g.deg()));
}

Vec small_linear_form(const SubspaceFF& V) {
  int m = V.dim();
  if (m == 0) fail("RankDeficient", "zero subspace");
  uint64_t p = V.K.p;
  PMat B = reduced_basis(V);
  Vec q(V.ambient, Elem::zero(p));
  if (m == 1) {
    int best = -1;
    for (int j = 0; j < V.ambient; ++j) {
      if (B[0][j].is_zero()) continue;
      if (best < 0 || B[0][j].deg() <= B[0][best].deg()) best = j;
    }
    q[best] = Elem::one(p);
    return q;
  }
  PMat head(B.begin(), B.end() - 1);
  Mat ker = right_kernel(to_elem(head), V.ambient);
  for (const auto& v : ker) {
    PVec vc = clear_vector(v);
    if (pairing(vc, B.back()).is_zero()) continue;
    return canonical_representative(V.K, v);
  }
  fail("InternalError", "no linear form separates the chain");
}

GradedIdeal::GradedIdeal(BaseField K0, int nv, std::vector<MPoly> g) : K(std::move(K0)), nvars(nv), gens(std::move(g)) {
  if (gens.empty()) fail("DegenerateDegrees", "ideal needs generators");
  bool linear = true;
  for (const auto& f : gens) {
    if (f.nvars() != nvars || f.is_zero() || !f.is_homogeneous())
      fail("DegenerateDegrees", "generators must be nonzero homogeneous forms in the ambient variables");
    if (f.total_degree() != 1) linear = false;
  }
  if (linear) {
    Mat rows;
    for (const auto& f : gens) {
      Vec v(nvars, Elem::zero(K.p));
      for (const auto& [e, c] : f.terms())
        for (int j = 0; j < nvars; ++j)
          if (e[j]) v[j] = c;
      rows.push_back(v);
    }
    Echelon E = rref(rows, nvars);
    r = nvars - static_cast<int>(E.rows.size());
    degree = 1;
    if (K.is_function_field()) height = schmidt_height(SubspaceFF(K, nvars, E.rows));
    nice_D = r;
    nice_source = "complete intersection of hyperplanes";
  } else if (gens.size() == 1) {
    r = nvars - 1;
    degree = gens[0].total_degree();
    Hypersurface X(K, gens[0]);
    height = philippon_height(X);
    nice_D = degree + nvars - 2;
    nice_source = "hypersurface";
  }
}

GradedIdeal GradedIdeal::hypersurface(const Hypersurface& X) { return GradedIdeal(X.K, X.n + 1, {X.F}); }

GradedIdeal GradedIdeal::point(const BaseField& K, const Point& x) {
  int nv = static_cast<int>(x.size());
  uint64_t p = K.p;
  int k = 0;
  while (k < nv && x[k].is_zero()) ++k;
  if (k == nv) fail("AllZero", "all coordinates vanish");
  std::vector<MPoly> g;
  for (int j = 0; j < nv; ++j) {
    if (j == k) continue;
    g.push_back(MPoly::var(p, nv, j).scale(x[k]) - MPoly::var(p, nv, k).scale(x[j]));
  }
  return GradedIdeal(K, nv, g);
}

int GradedIdeal::max_generator_degree() const {
  int m = 0;
  for (const auto& f : gens) m = std::max(m, f.total_degree());
  return m;
}

Mat GradedIdeal::piece(int delta) const {
  std::vector<Exps> monos = monomials_of_degree(nvars, delta);
  std::map<Exps, size_t> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  Mat rows;
  for (const auto& f : gens) {
    int e = f.total_degree();
    if (e > delta) continue;
    for (const auto& g : monomials_of_degree(nvars, delta - e)) {
      Vec v(monos.size(), Elem::zero(K.p));
      for (const auto& [ex, c] : f.terms()) {
        Exps m(nvars);
        for (int j = 0; j < nvars; ++j) m[j] = ex[j] + g[j];
        v[index.at(m)] = c;
      }
      rows.push_back(std::move(v));
    }
  }
  if (rows.empty()) return rows;
  return rref(rows, monos.size()).rows;
}

SubspaceFF GradedIdeal::piece_subspace(int delta) const {
  return SubspaceFF(K, static_cast<int>(monomials_of_degree(nvars, delta).size()), piece(delta));
}

namespace {

void require_degree(const GradedIdeal& I, int delta) {
  if (delta < I.max_generator_degree()) fail("DegreeTooSmall", "degree below the largest generator degree");
}

}  // namespace

long geometric_hilbert(const GradedIdeal& I, int delta) {
  require_degree(I, delta);
  long total = static_cast<long>(monomials_of_degree(I.nvars, delta).size());
  return total - static_cast<long>(I.piece(delta).size());
}

mpz_class chardin_bound(const GradedIdeal& I, int delta) {
  require_degree(I, delta);
  if (I.r < 0 || I.degree < 0) fail("MissingData", "ideal dimension and degree are unknown");
  return I.degree * binom(delta + I.r - 1, I.r - 1);
}

namespace {

// h(V) = h(V^perp). The Plücker route is used while the minor count stays small,
// otherwise the reduced row degrees of the smaller side.
HeightValue piece_height(const SubspaceFF& Id, const SubspaceFF& Vp) {
  const SubspaceFF& V = Vp.dim() < Id.dim() ? Vp : Id;
  if (binom(V.ambient, V.dim()) <= 400) return schmidt_height(V);
  return HeightValue(mpq_class(schmidt_height_reduced(V)));
}

}  // namespace

HeightValue arithmetic_hilbert(const GradedIdeal& I, int delta) {
  require_ff(I.K);
  require_degree(I, delta);
  SubspaceFF Id = I.piece_subspace(delta);
  return piece_height(Id, orthogonal_complement(Id));
}

mpq_class arith_hilbert_lower_bound(const mpq_class& h, int D, int r, int delta) {
  if (r < 1) fail("InvalidArgument", "r must be positive");
  if (delta < D + 1) fail("DegreeTooSmall", "need delta >= D + 1");
  mpq_class base(delta - D - 1, r);
  base.canonicalize();
  mpq_class out = h;
  for (int i = 0; i < r; ++i) out *= base;
  return out;
}

bool verify_dnice_direct(const GradedIdeal& I, int D, uint64_t seed) {
  if (I.r != 1) fail("UnsupportedDimension", "direct niceness check is implemented for r = 1");
  uint64_t p = I.K.p;
  std::mt19937_64 rng(seed);
  for (int d = 1; d <= 2; ++d) {
    int deg = D + d;
    std::vector<Exps> monos = monomials_of_degree(I.nvars, deg);
    std::map<Exps, size_t> index;
    for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    bool ok = false;
    for (int attempt = 0; attempt < 6 && !ok; ++attempt) {
      Mat rows = I.piece(deg);
      // A constant specialization of the generic form U of degree d.
      std::vector<std::pair<Exps, Elem>> U;
      for (const auto& m : monomials_of_degree(I.nvars, d)) {
        long v = static_cast<long>(rng() % 61) - 30;
        U.push_back({m, Elem(p, p ? reduce_mod(p, v) : mpq_class(v))});
      }
      for (const auto& g : monomials_of_degree(I.nvars, D)) {
        Vec v(monos.size(), Elem::zero(p));
        for (const auto& [ex, c] : U) {
          Exps m(I.nvars);
          for (int j = 0; j < I.nvars; ++j) m[j] = ex[j] + g[j];
          v[index.at(m)] += c;
        }
        rows.push_back(std::move(v));
      }
      ok = rank_fast(rows, monos.size()) == static_cast<int>(monos.size());
    }
    if (!ok) return false;
  }
  return true;
}

SmallSection small_section(const GradedIdeal& I, int delta) {
  require_ff(I.K);
  require_degree(I, delta);
  if (!I.nice_D || !I.height || I.r < 1 || I.degree < 1)
    fail("NotNice", "niceness data or height unavailable for this ideal");
  int D = *I.nice_D, r = I.r;
  if (delta < D + 1) fail("DegreeTooSmall", "need delta >= D + 1");
  SubspaceFF Id = I.piece_subspace(delta);
  SubspaceFF Vp = orthogonal_complement(Id);
  if (Vp.dim() == 0) fail("NotNice", "the graded piece is everything; the zero set is empty");
  SmallSection s;
  s.Hg = Vp.dim();
  s.Ha = piece_height(Id, Vp);
  Vec qv = small_linear_form(Vp);
  std::vector<Exps> monos = monomials_of_degree(I.nvars, delta);
  s.q = MPoly(I.K.p, I.nvars);
  for (size_t i = 0; i < monos.size(); ++i) s.q.add_term(monos[i], qv[i]);
  s.value = h_tilde(Vp, qv);
  Mat ext = Id.basis;
  ext.push_back(qv);
  s.nonmember = rank_fast(ext, monos.size()) == Id.dim() + 1;
  const mpq_class& h = I.height->exact();
  Interval er = Interval::e().pow(r);
  mpq_class num = h * mpq_class(mpz_class(delta - D - 1) * 1);
  for (int i = 1; i < r; ++i) num *= (delta - D - 1);
  mpz_class den = 1;
  for (int i = 1; i < r; ++i) den *= (delta + r - 1);
  Interval rhs = -Interval::from_mpq(num / mpq_class(den * r * I.degree)) / er;
  s.bound = HeightValue(rhs);
  s.bound_holds = s.value.interval().certainly_le(rhs);
  Interval four_e = Interval(4) * Interval::e();
  s.threshold = HeightValue(Interval::from_mpq(h / I.degree) / four_e.pow(r));
  return s;
}

long d_m_formula(int N, int dimX, int degX, int d, int m) {
  if (N < 1 || dimX < 0 || dimX > N || degX < 1 || d < 2 || m < 0)
    fail("InvalidArgument", "need N >= 1, 0 <= dim X <= N, deg X >= 1, d >= 2, m >= 0");
  mpz_class dm;
  mpz_ui_pow_ui(dm.get_mpz_t(), d, m);
  mpz_class q = mpz_class((N - dimX) * (degX - 1)) / dm;
  return q.get_si() + dimX + 1;
}

long delta_m(long Dm, int dimX) { return 2 * Dm + dimX + 2; }

}  // namespace hk
