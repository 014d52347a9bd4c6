#include "hk/field.hpp"

#include "hk/error.hpp"
#include "hk/factor.hpp"

namespace hk {

BaseField BaseField::finite_functions(uint64_t p, std::string v) {
  if (p < 2 || p >= (1ULL << 32) || !is_prime(mpz_class(static_cast<unsigned long>(p))))
    fail("InvalidField", "constant field characteristic must be a prime below 2^32");
  return {Kind::FpT, p, std::move(v)};
}

std::string BaseField::tag() const {
  switch (kind) {
    case Kind::Q:
      return "Q";
    case Kind::QT:
      return "Q(" + var + ")";
    case Kind::FpT:
      return "F_" + std::to_string(p) + "(" + var + ")";
  }
  return "";
}

Elem::Elem(uint64_t p, const mpq_class& c) : num_(UPoly::constant(p, c)), den_(UPoly::constant(p, 1)) {}

Elem::Elem(UPoly num) : num_(std::move(num)), den_(UPoly::constant(num_.p(), 1)) {}

Elem::Elem(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail("DivisionByZero", "zero denominator");
  if (num_.p() != den_.p()) fail("FieldMismatch", "numerator and denominator over different fields");
  normalize();
}

void Elem::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly::constant(num_.p(), 1);
    return;
  }
  if (den_.is_one()) return;
  if (den_.is_constant()) {
    num_ = num_.scale(den_.inv(den_.lc()));
    den_ = UPoly::constant(num_.p(), 1);
    return;
  }
  if (!num_.is_constant()) {
    UPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  mpq_class l = den_.lc();
  if (l != 1) {
    mpq_class il = den_.inv(l);
    num_ = num_.scale(il);
    den_ = den_.scale(il);
  }
}

mpq_class Elem::constant_value() const {
  if (!is_constant()) fail("NotConstant", "element is not a constant");
  return num_.coeff(0);
}

int Elem::degree() const {
  if (is_zero()) fail("ZeroElement", "degree of zero");
  return num_.deg() - den_.deg();
}

Elem Elem::operator+(const Elem& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return Elem(num_ + o.num_);
  if (den_ == o.den_) return Elem(num_ + o.num_, den_);
  return Elem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Elem Elem::operator-() const {
  Elem r(*this);
  r.num_ = -r.num_;
  return r;
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::operator*(const Elem& o) const {
  if (is_zero() || o.is_zero()) return Elem(p());
  if (den_.is_one() && o.den_.is_one()) return Elem(num_ * o.num_);
  // Cross-cancel first so the products stay reduced.
  UPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Elem r(p());
  r.num_ = (num_ / g1) * (o.num_ / g2);
  r.den_ = (den_ / g2) * (o.den_ / g1);
  r.normalize();
  return r;
}

Elem Elem::inv() const {
  if (is_zero()) fail("DivisionByZero", "inverse of zero");
  return Elem(den_, num_);
}

Elem Elem::operator/(const Elem& o) const { return *this * o.inv(); }

Elem Elem::pow(unsigned k) const {
  Elem r = one(p()), b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

bool Elem::operator<(const Elem& o) const {
  if (den_ != o.den_) return den_ < o.den_;
  return num_ < o.num_;
}

mpq_class Elem::eval(const mpq_class& a) const {
  mpq_class d = den_.eval(a);
  if (d == 0) fail("DivisionByZero", "specialization hits a pole");
  if (p()) return num_.mul(num_.eval(a), inv_mod(p(), d));
  return num_.eval(a) / d;
}

std::string Elem::str(const std::string& var) const {
  if (den_.is_one()) return num_.str(var);
  std::string n = num_.str(var), d = den_.str(var);
  if (!num_.is_constant() || num_.lc() < 0) n = "(" + n + ")";
  return n + "/(" + d + ")";
}

bool is_square(const Elem& x) {
  if (x.is_zero()) return true;
  return is_square_poly(x.num() * x.den());
}

}  // namespace hk
