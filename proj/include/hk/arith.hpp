#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "hk/field.hpp"
#include "hk/interval.hpp"
#include "hk/upoly.hpp"

namespace hk {

// Exact rational (function fields) or an outward-rounded interval. For exact values the
// interval is the point enclosure of the rational.
class HeightValue {
 public:
  HeightValue() : HeightValue(mpq_class(0)) {}
  explicit HeightValue(const mpq_class& q) : exact_(q), iv_(Interval::from_mpq(q)) {}
  explicit HeightValue(Interval iv) : iv_(std::move(iv)) {}

  bool is_exact() const { return exact_.has_value(); }
  const mpq_class& exact() const;
  const Interval& interval() const { return iv_; }
  double lo() const { return iv_.lo_d(); }
  double hi() const { return iv_.hi_d(); }

  HeightValue operator+(const HeightValue& o) const;
  HeightValue operator-(const HeightValue& o) const;
  HeightValue operator*(const HeightValue& o) const;
  HeightValue operator/(const HeightValue& o) const;
  HeightValue scale(const mpq_class& s) const;
  bool contains_zero() const { return is_exact() ? *exact_ == 0 : iv_.contains_zero(); }
  std::string str() const;

 private:
  std::optional<mpq_class> exact_;
  Interval iv_;
};

struct Place {
  enum class Kind { FinitePrime, ArchimedeanQ, FiniteIrreducible, InfinityFF };
  Kind kind = Kind::ArchimedeanQ;
  mpz_class prime;  // FinitePrime
  UPoly pi;         // FiniteIrreducible, monic irreducible
  int weight = 1;

  static Place finite_prime(const mpz_class& p);
  static Place archimedean() { return Place{}; }
  static Place irreducible(const UPoly& pi);
  static Place infinity();
  std::string str(const std::string& var = "t") const;
};

// Valuation of x at a non-archimedean place (ord_p or ord_pi, or -degree at infinity).
int valuation(const Place& v, const Elem& x);
HeightValue log_abs(const BaseField& K, const Place& v, const Elem& x);
// Every place where x has nonzero valuation, plus the archimedean or infinite place.
std::vector<Place> support(const BaseField& K, const Elem& x);
// Sum of log_abs over support(x); sets *sum when given.
bool product_formula_check(const BaseField& K, const Elem& x, HeightValue* sum = nullptr);

HeightValue weil_height(const BaseField& K, const std::vector<Elem>& coords);
HeightValue vector_height(const BaseField& K, const std::vector<Elem>& coeffs);
// Weil height from the place-by-place sum over the support of the coordinates.
HeightValue weil_height_by_places(const BaseField& K, const std::vector<Elem>& coords);

// Primitive integer representative with the first nonzero coordinate positive (over Q).
std::vector<mpz_class> primitive_integer_vector(const std::vector<Elem>& coords);
// Canonical projective representative: primitive integer vector over Q, primitive polynomial
// vector with the first nonzero coordinate monic over function fields.
std::vector<Elem> canonical_representative(const BaseField& K, const std::vector<Elem>& coords);
bool projectively_equal(const std::vector<Elem>& a, const std::vector<Elem>& b);

}  // namespace hk
