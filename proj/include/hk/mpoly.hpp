#pragma once

#include <map>
#include <string>
#include <vector>

#include "hk/field.hpp"

namespace hk {

using Exps = std::vector<int>;

// Sparse polynomial in x_0..x_{n-1} over a base field. Terms are kept in lex order with
// x_0 > x_1 > ..., so the leading term is the last map entry. No zero coefficients are stored.
class MPoly {
 public:
  MPoly() = default;
  MPoly(uint64_t p, int nvars) : p_(p), n_(nvars) {}

  static MPoly constant(uint64_t p, int nvars, const Elem& c);
  static MPoly monomial(uint64_t p, const Exps& e, const Elem& c);
  static MPoly var(uint64_t p, int nvars, int i);

  uint64_t p() const { return p_; }
  int nvars() const { return n_; }
  const std::map<Exps, Elem>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  int total_degree() const;  // -1 for zero
  // True iff all terms have one total degree (zero counts as homogeneous of degree -1).
  bool is_homogeneous() const;
  Elem coeff(const Exps& e) const;
  void add_term(const Exps& e, const Elem& c);
  const Exps& lead_exps() const { return t_.rbegin()->first; }
  const Elem& lead_coeff() const { return t_.rbegin()->second; }
  // Coefficients in lex order (ascending).
  std::vector<Elem> coefficient_vector() const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scale(const Elem& c) const;
  MPoly mul_monomial(const Exps& e, const Elem& c) const;
  // this += c * x^e * o, in place.
  void add_scaled_shift(const MPoly& o, const Exps& e, const Elem& c);
  MPoly pow(unsigned k) const;
  bool operator==(const MPoly& o) const { return n_ == o.n_ && t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // x_i -> vals[i]; all vals share one variable count.
  MPoly compose(const std::vector<MPoly>& vals) const;
  Elem eval(const std::vector<Elem>& x) const;
  // Embed into a ring with more variables, variable i goes to slot map[i].
  MPoly embed(int nvars, const std::vector<int>& map) const;
  // Specialize t = a in every coefficient.
  MPoly specialize(const mpq_class& a) const;
  // Partial derivative in x_i.
  MPoly derivative(int i) const;

  std::string str(const BaseField& K, const std::vector<std::string>& names = {}) const;

 private:
  uint64_t p_ = 0;
  int n_ = 0;
  std::map<Exps, Elem> t_;
};

// All exponent vectors of total degree d in n variables, in descending lex order.
std::vector<Exps> monomials_of_degree(int n, int d);
// Exact quotient a / b; false if b does not divide a.
bool divide_exact(const MPoly& a, const MPoly& b, MPoly& q);
// Remainder of f under lex division by the list g.
MPoly reduce(const MPoly& f, const std::vector<MPoly>& g);

std::vector<std::string> default_var_names(int nvars);
// Parse an expression in the field variable and x_0..x_{n-1} (aliases x,y,z,w and X,Y,Z,W).
MPoly parse_mpoly(const BaseField& K, int nvars, const std::string& s);

}  // namespace hk
