#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "hk/arith.hpp"
#include "hk/linalg.hpp"
#include "hk/mpoly.hpp"

namespace hk {

using Point = std::vector<Elem>;

// Local data behind the height comparison, derived from a Nullstellensatz certificate
// x_j^D = sum_i G_ij F_i for the primitive integral (or polynomial) lift F.
struct LocalConstants {
  int D = 0;
  std::vector<MPoly> lift;                  // primitive lift of the forms
  std::vector<std::vector<MPoly>> G;        // G[j][i]
  mpz_class Dfin_z;                         // Q: lcm of the denominators of G
  UPoly Dfin_poly;                          // function fields: same in k[t]
  Interval logA, logB;                      // Q: archimedean bounds
  int degA = 0, degB = 0;                   // function fields: bounds at infinity
  // Cutoff for heights of preperiodic points: (log B + log Dfin)/(d-1).
  HeightValue cutoff;
};

struct Endo {
  BaseField K;
  int N = 1;
  int d = 2;
  std::vector<MPoly> F;  // N+1 forms in N+1 variables

  Endo() = default;
  Endo(BaseField K, std::vector<MPoly> forms);

  Point apply(const Point& x) const;
  // Weil height of the coefficient vector of the lift.
  HeightValue height() const;
  Elem resultant() const;
  bool is_morphism() const { return !resultant().is_zero(); }
  void require_morphism() const;
  const LocalConstants& local() const;

 private:
  struct Cache {
    std::mutex m;
    std::optional<Elem> res;
    std::unique_ptr<LocalConstants> local;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Macaulay resultant of N+1 forms in N+1 variables; 1 on the coordinate power map.
Elem macaulay_resultant(const std::vector<MPoly>& forms);
// Sylvester resultant of two binary forms, ordered by descending powers of x_0.
Elem sylvester_resultant(const MPoly& f, const MPoly& g, int deg_f, int deg_g);

struct IngramConstants {
  int N = 0, d = 0;
  bool function_field = false;
  mpz_class c1;  // (N+1) d^N + 1
  mpz_class c2;  // (N+1)(d+1)^N (d^N+1)^((N+1)(d+2)^N) over Q, 0 over function fields
  HeightValue c0, c1_h, c2_h;
};
IngramConstants ingram_constants(int N, int d, const BaseField& K);

struct CanonicalHeightResult {
  HeightValue value;   // encloses the canonical height, width <= eps
  int steps = 0;       // telescoping terms evaluated
  long precision = 0;  // final working precision (bits), 0 over function fields
};

// Canonical height within eps via local telescoping; budget caps the number of terms.
CanonicalHeightResult canonical_height(const Endo& f, const Point& x, const mpq_class& eps, int budget = 4096);

struct OrbitRecord {
  std::vector<Point> points;
  int tail_length = 0;
  std::optional<int> cycle_length;
  bool truncated = false;
};
OrbitRecord orbit(const Endo& f, const Point& x, int max_steps);

// budget bounds the orbit length explored before giving up (BudgetExceeded).
bool is_preperiodic(const Endo& f, const Point& x, int budget = 100000);

struct CensusReport {
  HeightValue cutoff;
  mpz_class enumeration_bound;
  std::vector<Point> points;
  bool verified_complete = false;
  long candidates = 0;
  std::string note;
};
CensusReport preperiodic_census_on_curve(const Endo& f, const MPoly& curve, const mpz_class& bound,
                                         int workers = 1, long budget = 20000000);

}  // namespace hk
