#include "hk/factor.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <map>
#include <random>

#include "hk/error.hpp"
#include "zpoly.hpp"

namespace hk {

using namespace detail;

namespace {

NPoly to_n(const UPoly& f) {
  NPoly r;
  for (const auto& c : f.coeffs()) r.push_back(mpz_get_ui(c.get_num_mpz_t()));
  return r;
}

UPoly from_n(const NPoly& a, uint64_t p) {
  std::vector<mpq_class> c;
  for (auto x : a) c.emplace_back(static_cast<unsigned long>(x));
  return UPoly(p, std::move(c));
}

// Distinct-degree factorization of a monic square-free f: pairs (product of degree-d factors, d).
std::vector<std::pair<NPoly, int>> ddf(NPoly f, uint64_t p) {
  std::vector<std::pair<NPoly, int>> out;
  NPoly x = {0, 1};
  NPoly h = nrem(x, f, p);
  mpz_class pz(static_cast<unsigned long>(p));
  for (int d = 1; 2 * d <= ndeg(f); ++d) {
    h = npowmod(h, pz, f, p);
    NPoly g = ngcd(nsub(h, x, p), f, p);
    if (ndeg(g) > 0) {
      out.push_back({g, d});
      NPoly q, r;
      ndivmod(f, g, p, q, r);
      f = q;
      h = nrem(h, f, p);
    }
  }
  if (ndeg(f) > 0) out.push_back({f, ndeg(f)});
  return out;
}

// Equal-degree splitting of a monic product of irreducibles of degree d.
void edf(const NPoly& f, int d, uint64_t p, std::mt19937_64& rng, std::vector<NPoly>& out) {
  int n = ndeg(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, d);
  e = (e - 1) / 2;
  for (;;) {
    NPoly a(n);
    for (auto& c : a) c = rng() % p;
    ntrim(a);
    if (ndeg(a) < 1) continue;
    NPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)) splits in characteristic two.
      NPoly term = nrem(a, f, p);
      b = term;
      for (int i = 1; i < d; ++i) {
        term = nmulmod(term, term, f, p);
        b = nadd(b, term, p);
      }
    } else {
      b = nsub(npowmod(a, e, f, p), NPoly{1}, p);
    }
    NPoly g = ngcd(f, b, p);
    if (ndeg(g) > 0 && ndeg(g) < n) {
      NPoly q, r;
      ndivmod(f, g, p, q, r);
      edf(g, d, p, rng, out);
      edf(nmonic(q, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<NPoly> factor_sqf_mod(const NPoly& f, uint64_t p) {
  std::mt19937_64 rng(0x5eed + p);
  std::vector<NPoly> out;
  for (const auto& [g, d] : ddf(f, p)) edf(g, d, p, rng, out);
  return out;
}

bool nless(const NPoly& a, const NPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

const std::vector<uint64_t>& small_primes() {
  static const std::vector<uint64_t> ps = [] {
    std::vector<uint64_t> v;
    std::vector<bool> sieve(20000, true);
    for (uint64_t i = 2; i < sieve.size(); ++i) {
      if (!sieve[i]) continue;
      v.push_back(i);
      for (uint64_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
    }
    return v;
  }();
  return ps;
}

constexpr int kMaxDeg = 512;
using DegSet = std::bitset<kMaxDeg + 1>;

// Lift f = lc(f) * prod facs (mod p) to monic factors modulo M = p^(2^k) >= target.
void hensel(const ZPoly& f, const std::vector<NPoly>& facs, uint64_t p, const mpz_class& M,
            std::vector<ZPoly>& out) {
  if (facs.size() == 1) {
    mpz_class il;
    mpz_class l = f.back();
    mpz_invert(il.get_mpz_t(), l.get_mpz_t(), M.get_mpz_t());
    out.push_back(zmod(zscale(f, il), M));
    return;
  }
  size_t half = facs.size() / 2;
  std::vector<NPoly> A(facs.begin(), facs.begin() + half), B(facs.begin() + half, facs.end());
  NPoly g0 = {static_cast<uint64_t>(mpz_fdiv_ui(f.back().get_mpz_t(), p))};
  for (const auto& a : A) g0 = nmul(g0, a, p);
  NPoly h0 = {1};
  for (const auto& b : B) h0 = nmul(h0, b, p);
  NPoly s0, t0;
  NPoly one = nxgcd(g0, h0, p, s0, t0);
  if (one != NPoly{1}) fail("InternalError", "Hensel factors not coprime");
  ZPoly g = nlift(g0), h = nlift(h0), s = nlift(s0), t = nlift(t0);
  g.back() = f.back();
  mpz_class m(static_cast<unsigned long>(p));
  while (m < M) {
    mpz_class m2 = m * m;
    ZPoly e = zmod(zsub(f, zmul(g, h)), m2);
    ZPoly q, r;
    zdivmod_monic(zmul(s, e), h, m2, q, r);
    ZPoly gs = zmod(zadd(g, zadd(zmul(t, e), zmul(q, g))), m2);
    // The lifted cofactor keeps its degree and the exact leading coefficient of f.
    gs.resize(g.size());
    mpz_fdiv_r(gs.back().get_mpz_t(), f.back().get_mpz_t(), m2.get_mpz_t());
    ZPoly hs = zmod(zadd(h, r), m2);
    ZPoly b = zmod(zsub(zadd(zmul(s, gs), zmul(t, hs)), ZPoly{1}), m2);
    ZPoly c, d;
    zdivmod_monic(zmul(s, b), hs, m2, c, d);
    s = zmod(zsub(s, d), m2);
    t = zmod(zsub(t, zadd(zmul(t, b), zmul(c, gs))), m2);
    g = std::move(gs);
    h = std::move(hs);
    m = m2;
  }
  hensel(g, A, p, M, out);
  hensel(h, B, p, M, out);
}

// Factor a primitive square-free integer polynomial of degree >= 1 with positive lc.
std::vector<ZPoly> zassenhaus(ZPoly f) {
  int n = zdeg(f);
  if (n <= 1) return {f};
  if (n > kMaxDeg) fail("BudgetExceeded", "polynomial degree too large to factor");
  DegSet possible;
  possible.set();
  uint64_t best_p = 0;
  std::vector<std::pair<NPoly, int>> best_ddf;
  size_t best_count = SIZE_MAX;
  int good = 0;
  for (uint64_t p : small_primes()) {
    if (p == 2) continue;
    if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
    NPoly fp = nmonic(zreduce(f, p), p);
    if (ndeg(ngcd(fp, nderiv(fp, p), p)) > 0) continue;
    auto dd = ddf(fp, p);
    DegSet sums;
    sums.set(0);
    size_t count = 0;
    for (const auto& [g, d] : dd) {
      int k = ndeg(g) / d;
      count += k;
      for (int i = 0; i < k; ++i) sums |= sums << d;
    }
    possible &= sums;
    if (count < best_count) {
      best_count = count;
      best_p = p;
      best_ddf = dd;
    }
    bool irreducible = true;
    for (int i = 1; i < n; ++i)
      if (possible.test(i)) irreducible = false;
    if (irreducible) return {f};
    if (++good >= 5) break;
  }
  if (!best_p) fail("InternalError", "no good prime for factorization");
  uint64_t p = best_p;
  std::mt19937_64 rng(0x5eed + p);
  std::vector<NPoly> facs;
  for (const auto& [g, d] : best_ddf) edf(g, d, p, rng, facs);
  std::sort(facs.begin(), facs.end(), nless);

  // Coefficient bound for factors of lc * f: |lc| * 2^n * ||f||_2.
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  mpz_class bound = abs(f.back()) * root;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
  mpz_class target = 2 * bound + 1;
  mpz_class M(static_cast<unsigned long>(p));
  while (M < target) M *= M;

  std::vector<ZPoly> lifted;
  hensel(f, facs, p, M, lifted);

  std::vector<ZPoly> result;
  size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      mpz_class l = f.back();
      ZPoly g = {l};
      for (size_t i : idx) g = zmod(zmul(g, lifted[i]), M);
      g = zsymmod(g, M);
      // Constant-term filter before the full trial division.
      bool ok = true;
      if (!g.empty() && f[0] != 0) {
        mpz_class lf0 = l * f[0];
        if (g[0] == 0 || !mpz_divisible_p(lf0.get_mpz_t(), g[0].get_mpz_t())) ok = false;
      }
      ZPoly q;
      if (ok) {
        ZPoly pg = zprimitive(g);
        if (zdivexact(f, pg, q)) {
          result.push_back(pg);
          f = q;
          std::vector<ZPoly> rest;
          for (size_t i = 0; i < lifted.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
          lifted = std::move(rest);
          found = true;
          break;
        }
      }
      // Next combination in lexicographic order.
      int k = static_cast<int>(s) - 1;
      while (k >= 0 && idx[k] == lifted.size() - s + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (size_t j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zdeg(f) > 0) result.push_back(zprimitive(f));
  return result;
}

UPoly from_z(const ZPoly& z) {
  std::vector<mpq_class> c(z.begin(), z.end());
  return UPoly(0, std::move(c));
}

ZPoly to_z(const UPoly& f) {
  UPoly g = f.primitive();
  ZPoly z;
  for (const auto& c : g.coeffs()) z.push_back(c.get_num());
  return z;
}

// A prime not dividing lc with f mod p square-free certifies f square-free over Q.
bool squarefree_modular(const ZPoly& f) {
  for (uint64_t p : {1000003ULL, 1000033ULL, 1000037ULL}) {
    if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
    NPoly fp = zreduce(f, p);
    if (ndeg(ngcd(fp, nderiv(fp, p), p)) == 0) return true;
  }
  return false;
}

}  // namespace

UFactorization factor(const UPoly& f) {
  if (f.is_zero()) fail("ZeroElement", "factorization of zero");
  UFactorization r;
  r.unit = f.lc();
  uint64_t p = f.p();
  std::vector<std::pair<UPoly, int>> parts;
  if (p == 0 && f.deg() > 0 && squarefree_modular(to_z(f)))
    parts.push_back({f.monic(), 1});
  else if (f.deg() > 0)
    parts = squarefree(f);
  for (const auto& [a, e] : parts) {
    if (p == 0) {
      for (const auto& g : zassenhaus(to_z(a))) r.factors.push_back({from_z(g).monic(), e});
    } else {
      for (const auto& g : factor_sqf_mod(to_n(a), p)) r.factors.push_back({from_n(g, p), e});
    }
  }
  std::sort(r.factors.begin(), r.factors.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  // Square-free parts are coprime, but the F_p recursion may emit a factor twice.
  std::vector<std::pair<UPoly, int>> merged;
  for (auto& fe : r.factors) {
    if (!merged.empty() && merged.back().first == fe.first)
      merged.back().second += fe.second;
    else
      merged.push_back(fe);
  }
  r.factors = std::move(merged);
  return r;
}

bool is_irreducible(const UPoly& f) {
  if (f.deg() < 1) return false;
  auto fa = factor(f);
  return fa.factors.size() == 1 && fa.factors[0].second == 1;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  for (;;) {
    mpz_class y = rng.get_z_range(n), c = rng.get_z_range(n - 1) + 1, g = 1, r = 1, q = 1, x, ys;
    const unsigned long m = 128;
    auto f = [&](const mpz_class& v) {
      mpz_class w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    while (g == 1) {
      x = y;
      for (mpz_class i = 0; i < r; ++i) y = f(y);
      mpz_class k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < m && k + i < r; ++i) {
          y = f(y);
          mpz_class d = abs(x - y);
          q = q * d % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    ++seed;
    rng.seed(seed);
  }
}

void split(const mpz_class& n, std::map<mpz_class, int>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n]++;
    return;
  }
  mpz_class d = pollard_brent(n, 1);
  split(d, acc);
  split(n / d, acc);
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n0) {
  if (n0 == 0) fail("ZeroElement", "factorization of zero");
  mpz_class n = abs(n0);
  std::map<mpz_class, int> acc;
  for (uint64_t p : small_primes()) {
    if (n == 1 || mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      acc[mpz_class(static_cast<unsigned long>(p))]++;
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  split(n, acc);
  return {acc.begin(), acc.end()};
}

}  // namespace hk
