#pragma once

// Internal helpers for integer and word-size modular polynomials.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace hk::detail {

using ZPoly = std::vector<mpz_class>;  // little-endian, no trailing zeros
using NPoly = std::vector<uint64_t>;   // coefficients mod a word prime p < 2^32

inline void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b);
ZPoly zadd(const ZPoly& a, const ZPoly& b);
ZPoly zsub(const ZPoly& a, const ZPoly& b);
ZPoly zscale(const ZPoly& a, const mpz_class& s);
mpz_class zcontent(const ZPoly& a);
ZPoly zprimitive(const ZPoly& a);  // positive leading coefficient
// Exact division over Z; returns false if b does not divide a.
bool zdivexact(const ZPoly& a, const ZPoly& b, ZPoly& q);
// Pseudo-remainder of a by b.
ZPoly zprem(const ZPoly& a, const ZPoly& b);
ZPoly zgcd(const ZPoly& a, const ZPoly& b);  // primitive, positive lc
// Reduce into the symmetric range modulo m.
ZPoly zsymmod(const ZPoly& a, const mpz_class& m);
ZPoly zmod(const ZPoly& a, const mpz_class& m);
// Division by a monic b with coefficients reduced modulo m.
void zdivmod_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r);

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) { return a * b % p; }
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);

void ntrim(NPoly& a);
inline int ndeg(const NPoly& a) { return static_cast<int>(a.size()) - 1; }
NPoly nadd(const NPoly& a, const NPoly& b, uint64_t p);
NPoly nsub(const NPoly& a, const NPoly& b, uint64_t p);
NPoly nmul(const NPoly& a, const NPoly& b, uint64_t p);
NPoly nscale(const NPoly& a, uint64_t s, uint64_t p);
void ndivmod(const NPoly& a, const NPoly& b, uint64_t p, NPoly& q, NPoly& r);
NPoly nrem(const NPoly& a, const NPoly& b, uint64_t p);
NPoly nmonic(const NPoly& a, uint64_t p);
NPoly ngcd(NPoly a, NPoly b, uint64_t p);
NPoly nxgcd(const NPoly& a, const NPoly& b, uint64_t p, NPoly& s, NPoly& t);
NPoly nderiv(const NPoly& a, uint64_t p);
NPoly nmulmod(const NPoly& a, const NPoly& b, const NPoly& m, uint64_t p);
NPoly npowmod(const NPoly& a, const mpz_class& e, const NPoly& m, uint64_t p);

NPoly zreduce(const ZPoly& a, uint64_t p);
ZPoly nlift(const NPoly& a);

}  // namespace hk::detail
