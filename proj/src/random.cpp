#include "hk/random.hpp"

#include "hk/error.hpp"

namespace hk {

long rand_range(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Elem random_rational(Rng& rng, long max_abs) {
  long n = rand_range(rng, 1, max_abs), d = rand_range(rng, 1, max_abs);
  if (rng() & 1) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Elem(0, q);
}

UPoly random_upoly(Rng& rng, uint64_t p, int max_deg, long max_coef) {
  for (;;) {
    int deg = static_cast<int>(rand_range(rng, 0, max_deg));
    std::vector<mpq_class> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(rand_range(rng, -max_coef, max_coef));
    UPoly f(p, c);
    if (!f.is_zero()) return f;
  }
}

Elem random_function(Rng& rng, const BaseField& K, int max_deg, long max_coef) {
  UPoly num = random_upoly(rng, K.p, max_deg, max_coef), den = random_upoly(rng, K.p, max_deg, max_coef);
  return Elem(num, den);
}

Elem random_coefficient(Rng& rng, const BaseField& K, long max_coef, int max_tdeg) {
  if (!K.is_function_field() || max_tdeg == 0) return Elem(K.p, mpq_class(rand_range(rng, -max_coef, max_coef)));
  int deg = static_cast<int>(rand_range(rng, 0, max_tdeg));
  std::vector<mpq_class> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(rand_range(rng, -max_coef, max_coef));
  return Elem(UPoly(K.p, c));
}

MPoly random_form(Rng& rng, const BaseField& K, int nvars, int deg, long max_coef, int max_tdeg) {
  for (;;) {
    MPoly f(K.p, nvars);
    for (const auto& m : monomials_of_degree(nvars, deg))
      if (rng() % 3 != 0) f.add_term(m, random_coefficient(rng, K, max_coef, max_tdeg));
    if (!f.is_zero()) return f;
  }
}

Endo random_morphism(Rng& rng, const BaseField& K, int N, int d, long max_coef, int max_tdeg) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<MPoly> F;
    for (int i = 0; i <= N; ++i) {
      // A dominant power term keeps most samples morphisms.
      MPoly f = random_form(rng, K, N + 1, d, max_coef, max_tdeg);
      Exps e(N + 1, 0);
      e[i] = d;
      if (f.coeff(e).is_zero()) f.add_term(e, Elem(K.p, mpq_class(rand_range(rng, 1, max_coef))));
      F.push_back(f);
    }
    Endo phi(K, F);
    if (phi.is_morphism()) return phi;
  }
  fail("InternalError", "no morphism sampled");
}

Point random_point(Rng& rng, const BaseField& K, int N, long max_coef, int max_tdeg) {
  for (;;) {
    Point x;
    bool nz = false;
    for (int i = 0; i <= N; ++i) {
      x.push_back(random_coefficient(rng, K, max_coef, max_tdeg));
      nz = nz || !x.back().is_zero();
    }
    if (nz) return x;
  }
}

Mat random_full_rank(Rng& rng, const BaseField& K, int rows, int cols, int max_deg, long max_coef) {
  if (rows > cols) fail("InvalidArgument", "more rows than columns");
  for (;;) {
    Mat a(rows, Vec(cols, Elem::zero(K.p)));
    for (auto& r : a)
      for (auto& x : r) x = random_coefficient(rng, K, max_coef, max_deg);
    if (rank_fast(a, cols) == rows) return a;
  }
}

}  // namespace hk
