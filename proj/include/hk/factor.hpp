#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "hk/upoly.hpp"

namespace hk {

// f = unit * prod g_i^{e_i}, g_i monic irreducible and distinct, sorted by (degree, coefficients).
struct UFactorization {
  mpq_class unit;
  std::vector<std::pair<UPoly, int>> factors;
};

UFactorization factor(const UPoly& f);
bool is_irreducible(const UPoly& f);

// |n| = prod p_i^{e_i}, primes ascending; n != 0.
std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n);
bool is_prime(const mpz_class& n);

}  // namespace hk
