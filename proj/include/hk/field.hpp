#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "hk/upoly.hpp"

namespace hk {

// Q, Q(t) or F_p(t). Elements of every kind are stored as reduced fractions of UPoly.
struct BaseField {
  enum class Kind { Q, QT, FpT };
  Kind kind = Kind::Q;
  uint64_t p = 0;
  std::string var = "t";

  static BaseField rationals() { return {Kind::Q, 0, "t"}; }
  static BaseField rational_functions(std::string v = "t") { return {Kind::QT, 0, std::move(v)}; }
  static BaseField finite_functions(uint64_t p, std::string v = "t");

  bool is_function_field() const { return kind != Kind::Q; }
  // Characteristic of the constant field.
  uint64_t characteristic() const { return p; }
  std::string tag() const;  // "Q", "Q(t)", "F_7(t)"
  bool operator==(const BaseField& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const BaseField& o) const { return !(*this == o); }
};

// num/den with gcd 1 and den monic. Over Q both are constants and den == 1.
class Elem {
 public:
  Elem() : num_(0), den_(UPoly::constant(0, 1)) {}
  explicit Elem(uint64_t p) : num_(p), den_(UPoly::constant(p, 1)) {}
  Elem(uint64_t p, const mpq_class& c);
  Elem(UPoly num, UPoly den);
  explicit Elem(UPoly num);

  static Elem zero(uint64_t p) { return Elem(p); }
  static Elem one(uint64_t p) { return Elem(p, 1); }
  static Elem t(uint64_t p) { return Elem(UPoly::var(p)); }

  uint64_t p() const { return num_.p(); }
  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  // Constant value; fails unless is_constant().
  mpq_class constant_value() const;
  // deg num - deg den (the order at infinity, negated).
  int degree() const;

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator*(const Elem& o) const;
  Elem operator/(const Elem& o) const;
  Elem operator-() const;
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator-=(const Elem& o) { return *this = *this - o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }
  Elem& operator/=(const Elem& o) { return *this = *this / o; }
  Elem inv() const;
  Elem pow(unsigned k) const;

  bool operator==(const Elem& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Elem& o) const { return !(*this == o); }
  bool operator<(const Elem& o) const;

  // Substitute t = a (den(a) must not vanish).
  mpq_class eval(const mpq_class& a) const;
  std::string str(const std::string& var = "t") const;

 private:
  void normalize();
  UPoly num_, den_;
};

Elem parse_elem(const BaseField& K, const std::string& s);
// True iff x is a square in K (p odd or Q-based).
bool is_square(const Elem& x);

}  // namespace hk
