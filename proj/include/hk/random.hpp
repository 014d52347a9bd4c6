#pragma once

#include <random>

#include "hk/dynamics.hpp"
#include "hk/linalg.hpp"

namespace hk {

// Seeded generators for sweeps, self-tests and the acceptance suite.
using Rng = std::mt19937_64;

long rand_range(Rng& rng, long lo, long hi);  // inclusive
// Nonzero rational with numerator and denominator magnitudes in [1, max_abs].
Elem random_rational(Rng& rng, long max_abs);
// Nonzero constant-field polynomial of degree <= max_deg with coefficients in [-max_coef, max_coef].
UPoly random_upoly(Rng& rng, uint64_t p, int max_deg, long max_coef);
// Nonzero quotient of two such polynomials (denominator monic over F_p).
Elem random_function(Rng& rng, const BaseField& K, int max_deg, long max_coef);
// Coefficient: integer over Q, polynomial in t of degree <= max_tdeg otherwise.
Elem random_coefficient(Rng& rng, const BaseField& K, long max_coef, int max_tdeg);
MPoly random_form(Rng& rng, const BaseField& K, int nvars, int deg, long max_coef, int max_tdeg = 0);
// Retries until the Macaulay resultant is nonzero.
Endo random_morphism(Rng& rng, const BaseField& K, int N, int d, long max_coef, int max_tdeg = 0);
Point random_point(Rng& rng, const BaseField& K, int N, long max_coef, int max_tdeg = 0);
// rows x cols matrix of full row rank with polynomial entries of degree <= max_deg.
Mat random_full_rank(Rng& rng, const BaseField& K, int rows, int cols, int max_deg, long max_coef);

}  // namespace hk
