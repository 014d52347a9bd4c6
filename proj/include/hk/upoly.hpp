#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hk {

// Dense univariate polynomial over Q (p == 0) or F_p (0 < p < 2^32).
// Over F_p every coefficient is an integer in [0, p). No trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(uint64_t p) : p_(p) {}
  UPoly(uint64_t p, std::vector<mpq_class> c);

  static UPoly constant(uint64_t p, const mpq_class& c);
  static UPoly monomial(uint64_t p, const mpq_class& c, int k);
  static UPoly var(uint64_t p) { return monomial(p, 1, 1); }

  uint64_t p() const { return p_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int i) const;
  const mpq_class& lc() const { return c_.back(); }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator-() const;
  UPoly operator*(const UPoly& o) const;
  UPoly scale(const mpq_class& s) const;
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  UPoly pow(unsigned k) const;
  UPoly shift(int k) const;  // multiply by t^k

  bool operator==(const UPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }
  // Total order: degree first, then coefficients from the top.
  bool operator<(const UPoly& o) const;

  mpq_class eval(const mpq_class& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  // Reversal t^n f(1/t) with n = deg.
  UPoly reverse(int n) const;
  // Composition f(g).
  UPoly compose(const UPoly& g) const;
  // Lowest exponent with nonzero coefficient (the t-adic valuation).
  int low_order() const;

  // Over Q: c > 0 rational with f / c integral, primitive, with positive leading coefficient.
  mpq_class content() const;
  UPoly primitive() const;

  std::string str(const std::string& var = "t") const;

  // Field helpers for the coefficient ring.
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class inv(const mpq_class& a) const;
  mpq_class reduce(const mpq_class& a) const;

 private:
  void trim();
  uint64_t p_ = 0;
  std::vector<mpq_class> c_;
};

mpq_class reduce_mod(uint64_t p, const mpq_class& a);
mpq_class inv_mod(uint64_t p, const mpq_class& a);

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator/(const UPoly& a, const UPoly& b);  // exact quotient, fails otherwise
UPoly operator%(const UPoly& a, const UPoly& b);
bool divides(const UPoly& b, const UPoly& a);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// g = s a + t b with g monic.
UPoly xgcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);
// Multiplicity of the monic irreducible pi in f (f != 0).
int valuation(const UPoly& f, const UPoly& pi);

// Square-free decomposition: f = lc * prod a_i^i with a_i monic, square-free, pairwise coprime.
std::vector<std::pair<UPoly, int>> squarefree(const UPoly& f);
bool is_square_rational(const mpq_class& q);
// True iff f is a square in k[t] (k = Q or F_p, p odd).
bool is_square_poly(const UPoly& f);

}  // namespace hk
