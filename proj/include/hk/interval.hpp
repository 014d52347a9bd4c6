#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace hk {

// Working precision in bits for new intervals; thread-local so parallel sweeps may differ.
mpfr_prec_t default_precision();
void set_default_precision(mpfr_prec_t bits);

class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

// Closed interval [lo, hi] with outward rounding on every operation.
class Interval {
 public:
  Interval();
  explicit Interval(long v);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_mpz(const mpz_class& z);
  static Interval from_mpq(const mpq_class& q);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval e();
  static Interval log_of(const mpz_class& z);
  static Interval log_of(const mpq_class& q);
  // Exact power of two 2^k (k may be negative or large).
  static Interval pow2(const mpz_class& k);

  mpfr_prec_t precision() const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;
  Interval operator-() const;
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  Interval log() const;
  Interval exp() const;
  Interval sqrt() const;
  Interval abs() const;
  Interval pow(unsigned long k) const;
  Interval widen(const Interval& radius) const;  // [lo - r.hi, hi + r.hi]

  static Interval max(const Interval& a, const Interval& b);
  static Interval min(const Interval& a, const Interval& b);

  bool contains(const mpq_class& q) const;
  bool contains_zero() const;
  bool certainly_positive() const;
  bool certainly_nonnegative() const;
  bool certainly_negative() const;
  bool certainly_le(const Interval& o) const;  // hi <= o.lo
  bool certainly_lt(const Interval& o) const;  // hi < o.lo
  bool overlaps(const Interval& o) const;

  double lo_d() const;
  double hi_d() const;
  double mid_d() const;
  Interval width() const;
  // log2 of the width, -inf for a point interval.
  double log2_width() const;

  mpz_class ceil_hi() const;
  mpz_class floor_lo() const;
  // Decimal strings rounded outward with the given significant digits.
  std::string lo_str(int digits = 40) const;
  std::string hi_str(int digits = 40) const;

  const __mpfr_struct* lo_ptr() const { return lo_; }
  const __mpfr_struct* hi_ptr() const { return hi_; }

 private:
  explicit Interval(mpfr_prec_t prec, int);
  mpfr_t lo_, hi_;
  bool live_ = false;
};

}  // namespace hk
