#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hk/arith.hpp"

namespace hk {

// Heights of integers vanish over function fields, so every bound depends on this tag.
enum class FieldCase { FunctionField, Rational };

enum class Verdict { True, False, Inconclusive };
const char* verdict_name(Verdict v);

struct BoundReport {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::optional<HeightValue> threshold;
  std::string bound_name;  // degree_bound, count_bound, n_threshold, m, ...
  mpz_class bound;         // ceiling of the rigorous upper endpoint
  HeightValue value;       // the bound expression itself
  std::vector<std::pair<std::string, std::string>> extras;  // auxiliary outputs
  std::vector<std::pair<std::string, Verdict>> verdicts;
  std::string provenance;
  std::string latex;

  // False if any verdict is False or Inconclusive.
  bool hypotheses_hold() const;
};

// 3N(r+1)(deg X)^2 ((2+6h(N+1))(r+1)^2(4e)^(r+1)(c1 h(Phi)+c2+c0)/hhat + 1)^(N+1).
BoundReport zhang_bound(int N, int d, int r, int degX, const HeightValue& hPhi, const HeightValue& hhatX_lower,
                        FieldCase field);

// Same shape with C(phi, iota) + 7/2 h(N+1) as numerator; a non-identity embedding adds
// 2h((N+1)!) + 2h(N+1) to C.
BoundReport zhang2_bound(int N, int d, int dimX, int degLX, const HeightValue& C_phi_iota,
                         const HeightValue& hhat_lower, FieldCase field, bool general_embedding = false);
HeightValue embedding_correction(int N, FieldCase field);

struct MChoice {
  long m = 0;
  bool clamped = false;    // the logarithm was negative
  Verdict verified = Verdict::Inconclusive;  // iterate-height inequality at the returned m
  HeightValue ratio;
};
// Least m >= 0 with d^m >= (2+6h(N+1))(dim X+1)^2(4e)^(dim X+1)(c+c0)/hhat.
MChoice choice_of_m(int d, int dimX, const HeightValue& c_const, const HeightValue& hhatX, int N, FieldCase field);

BoundReport fermat_bounds(int d, const mpz_class& n, const HeightValue& hPhi, const HeightValue& h_f, FieldCase field);
HeightValue fermat_height_lower(int d, const HeightValue& h_f, FieldCase field);

// 144((2+6h(4))(4e)^2 4^2 (c1(1,l) h_f + c2(1,l) + 7/2 h(4))/Delta + 1)^3.
BoundReport prop52_n_threshold(int ell, const HeightValue& h_f, const HeightValue& delta_lower, FieldCase field);
// Diagonal-height lower bound from the Weil height of f (function fields drop the h(2), h(sqrt 2) terms).
HeightValue prop53_lower(int ell, const HeightValue& hPh_f, FieldCase field);
// 2^(-500 l^3) max{h_f, 1}.
HeightValue prop54_lower(int ell, const HeightValue& h_f);

// D_m and delta_m for the m-th iterate together with delta_m <= 3N deg X (dim X + 1).
BoundReport dm_report(int N, int dimX, int degX, int d, int m);

}  // namespace hk
