#include "hk/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hk/error.hpp"

namespace hk {

namespace {

thread_local mpfr_prec_t g_precision = 256;

struct ExponentRange {
  ExponentRange() {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
  }
};
const ExponentRange g_range;

std::string fmt(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*e", digits - 1, rnd, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

mpfr_prec_t default_precision() { return g_precision; }
void set_default_precision(mpfr_prec_t bits) {
  if (bits < 64) fail("InvalidPrecision", "precision must be at least 64 bits");
  g_precision = bits;
}

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(g_precision) { set_default_precision(bits); }
PrecisionScope::~PrecisionScope() { g_precision = saved_; }

Interval::Interval(mpfr_prec_t prec, int) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  live_ = true;
}

Interval::Interval() : Interval(g_precision, 0) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v) : Interval(g_precision, 0) {
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Interval& o) : Interval(o.precision(), 0) {
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o.precision(), 0) {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.precision());
    mpfr_set_prec(hi_, o.precision());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  if (this != &o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  return *this;
}

Interval::~Interval() {
  if (live_) {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }
}

mpfr_prec_t Interval::precision() const { return mpfr_get_prec(lo_); }

Interval Interval::from_mpz(const mpz_class& z) {
  Interval r(g_precision, 0);
  mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_mpq(const mpq_class& q) {
  Interval r(g_precision, 0);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()), 0);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::e() {
  Interval r(g_precision, 0);
  mpfr_set_ui(r.lo_, 1, MPFR_RNDN);
  mpfr_set_ui(r.hi_, 1, MPFR_RNDN);
  mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log_of(const mpz_class& z) { return from_mpz(z).log(); }
Interval Interval::log_of(const mpq_class& q) { return from_mpq(q).log(); }

Interval Interval::pow2(const mpz_class& k) {
  if (!k.fits_slong_p()) fail("Overflow", "power of two exponent out of range");
  Interval r(g_precision, 0);
  mpfr_set_ui_2exp(r.lo_, 1, k.get_si(), MPFR_RNDD);
  mpfr_set_ui_2exp(r.hi_, 1, k.get_si(), MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::max(precision(), o.precision()), 0);
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::max(precision(), o.precision()), 0);
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision(), 0);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  mpfr_prec_t p = std::max(precision(), o.precision());
  Interval r(p, 0);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) fail("DivisionByZero", "interval divisor contains zero");
  mpfr_prec_t p = std::max(precision(), o.precision());
  Interval r(p, 0);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) fail("DomainError", "logarithm of an interval not bounded away from zero");
  Interval r(precision(), 0);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(precision(), 0);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) fail("DomainError", "square root of a negative interval");
  Interval r(precision(), 0);
  if (mpfr_sgn(lo_) < 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  Interval r(precision(), 0);
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(unsigned long k) const {
  Interval r(1);
  Interval base = *this;
  // Even powers of a sign-straddling interval must stay nonnegative.
  if (k % 2 == 0) base = base.abs();
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Interval Interval::widen(const Interval& radius) const {
  Interval r(std::max(precision(), radius.precision()), 0);
  mpfr_sub(r.lo_, lo_, radius.hi_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, radius.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()), 0);
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::min(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()), 0);
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

bool Interval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}
bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::certainly_nonnegative() const { return mpfr_sgn(lo_) >= 0; }
bool Interval::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::certainly_le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_); }
bool Interval::certainly_lt(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
bool Interval::overlaps(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_d() const { return 0.5 * (lo_d() + hi_d()); }

Interval Interval::width() const {
  Interval r(precision(), 0);
  mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
  mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDD);
  return r;
}

double Interval::log2_width() const {
  Interval w = width();
  if (mpfr_zero_p(w.hi_)) return -INFINITY;
  long exp = 0;
  double m = mpfr_get_d_2exp(&exp, w.hi_, MPFR_RNDU);
  return std::log2(m) + static_cast<double>(exp);
}

mpz_class Interval::ceil_hi() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDU);
  return z;
}

mpz_class Interval::floor_lo() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDD);
  return z;
}

std::string Interval::lo_str(int digits) const { return fmt(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_str(int digits) const { return fmt(hi_, digits, MPFR_RNDU); }

}  // namespace hk
