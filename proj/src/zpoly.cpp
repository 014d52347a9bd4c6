#include "zpoly.hpp"

#include <algorithm>

#include "hk/error.hpp"

namespace hk::detail {

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  ztrim(r);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  ztrim(r);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  ztrim(r);
  return r;
}

ZPoly zscale(const ZPoly& a, const mpz_class& s) {
  if (s == 0) return {};
  ZPoly r(a);
  for (auto& x : r) x *= s;
  return r;
}

mpz_class zcontent(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& x : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly zprimitive(const ZPoly& a) {
  if (a.empty()) return a;
  mpz_class g = zcontent(a);
  if (a.back() < 0) g = -g;
  ZPoly r(a);
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return r;
}

bool zdivexact(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  if (b.empty()) fail("DivisionByZero", "integer polynomial division by zero");
  q.clear();
  if (a.empty()) return true;
  if (a.size() < b.size()) return false;
  ZPoly r(a);
  q.assign(a.size() - b.size() + 1, 0);
  const mpz_class& lb = b.back();
  for (int i = zdeg(r) - zdeg(b); i >= 0; --i) {
    const mpz_class& top = r[i + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_class c = top / lb;
    q[i] = c;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
  }
  ztrim(r);
  ztrim(q);
  return r.empty();
}

ZPoly zprem(const ZPoly& a, const ZPoly& b) {
  ZPoly r(a);
  const mpz_class& lb = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    mpz_class lr = r.back();
    size_t sh = r.size() - b.size();
    for (auto& x : r) x *= lb;
    for (size_t j = 0; j < b.size(); ++j) r[sh + j] -= lr * b[j];
    ztrim(r);
  }
  return r;
}

ZPoly zgcd(const ZPoly& a, const ZPoly& b) {
  if (a.empty()) return zprimitive(b);
  if (b.empty()) return zprimitive(a);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), zcontent(a).get_mpz_t(), zcontent(b).get_mpz_t());
  ZPoly x = zprimitive(a), y = zprimitive(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZPoly r = zprem(x, y);
    x = std::move(y);
    y = zprimitive(r);
  }
  return zprimitive(x);
}

ZPoly zsymmod(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  mpz_class half = m / 2;
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
    if (r[i] > half) r[i] -= m;
  }
  ztrim(r);
  return r;
}

ZPoly zmod(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  ztrim(r);
  return r;
}

void zdivmod_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r) {
  r = zmod(a, m);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  for (int i = zdeg(r) - zdeg(b); i >= 0; --i) {
    mpz_class c = r[i + b.size() - 1];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c == 0) continue;
    q[i] = c;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] -= c * b[j];
      mpz_fdiv_r(r[i + j].get_mpz_t(), r[i + j].get_mpz_t(), m.get_mpz_t());
    }
  }
  r = zmod(r, m);
  ztrim(q);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t p) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t, nt);
    nt -= q * t;
    std::swap(r, nr);
    nr -= q * r;
  }
  if (r != 1) fail("DivisionByZero", "non-invertible residue");
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

void ntrim(NPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

NPoly nadd(const NPoly& a, const NPoly& b, uint64_t p) {
  NPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = (x + y) % p;
  }
  ntrim(r);
  return r;
}

NPoly nsub(const NPoly& a, const NPoly& b, uint64_t p) {
  NPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  ntrim(r);
  return r;
}

NPoly nmul(const NPoly& a, const NPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  NPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  ntrim(r);
  return r;
}

NPoly nscale(const NPoly& a, uint64_t s, uint64_t p) {
  NPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
  ntrim(r);
  return r;
}

void ndivmod(const NPoly& a, const NPoly& b, uint64_t p, NPoly& q, NPoly& r) {
  if (b.empty()) fail("DivisionByZero", "modular polynomial division by zero");
  r = a;
  q.clear();
  if (r.size() < b.size()) return;
  uint64_t il = invmod(b.back(), p);
  q.assign(r.size() - b.size() + 1, 0);
  for (int i = ndeg(r) - ndeg(b); i >= 0; --i) {
    uint64_t c = mulmod(r[i + b.size() - 1], il, p);
    if (!c) continue;
    q[i] = c;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + p - mulmod(c, b[j], p)) % p;
  }
  ntrim(r);
  ntrim(q);
}

NPoly nrem(const NPoly& a, const NPoly& b, uint64_t p) {
  NPoly q, r;
  ndivmod(a, b, p, q, r);
  return r;
}

NPoly nmonic(const NPoly& a, uint64_t p) {
  if (a.empty()) return a;
  return nscale(a, invmod(a.back(), p), p);
}

NPoly ngcd(NPoly a, NPoly b, uint64_t p) {
  while (!b.empty()) {
    NPoly r = nrem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return nmonic(a, p);
}

NPoly nxgcd(const NPoly& a, const NPoly& b, uint64_t p, NPoly& s, NPoly& t) {
  NPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    NPoly q, r;
    ndivmod(r0, r1, p, q, r);
    NPoly s2 = nsub(s0, nmul(q, s1, p), p);
    NPoly t2 = nsub(t0, nmul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return r0;
  }
  uint64_t il = invmod(r0.back(), p);
  s = nscale(s0, il, p);
  t = nscale(t0, il, p);
  return nscale(r0, il, p);
}

NPoly nderiv(const NPoly& a, uint64_t p) {
  if (a.size() <= 1) return {};
  NPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
  ntrim(r);
  return r;
}

NPoly nmulmod(const NPoly& a, const NPoly& b, const NPoly& m, uint64_t p) {
  return nrem(nmul(a, b, p), m, p);
}

NPoly npowmod(const NPoly& a, const mpz_class& e, const NPoly& m, uint64_t p) {
  NPoly r = nrem(NPoly{1}, m, p);
  NPoly base = nrem(a, m, p);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = nmulmod(r, r, m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = nmulmod(r, base, m, p);
  }
  return r;
}

NPoly zreduce(const ZPoly& a, uint64_t p) {
  NPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  ntrim(r);
  return r;
}

ZPoly nlift(const NPoly& a) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

}  // namespace hk::detail
