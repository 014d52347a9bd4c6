#include "hk/arith.hpp"

#include <algorithm>
#include <map>

#include "hk/error.hpp"
#include "hk/factor.hpp"

namespace hk {

const mpq_class& HeightValue::exact() const {
  if (!exact_) fail("NotExact", "height value is an interval");
  return *exact_;
}

HeightValue HeightValue::operator+(const HeightValue& o) const {
  if (is_exact() && o.is_exact()) return HeightValue(*exact_ + *o.exact_);
  return HeightValue(iv_ + o.iv_);
}

HeightValue HeightValue::operator-(const HeightValue& o) const {
  if (is_exact() && o.is_exact()) return HeightValue(*exact_ - *o.exact_);
  return HeightValue(iv_ - o.iv_);
}

HeightValue HeightValue::operator*(const HeightValue& o) const {
  if (is_exact() && o.is_exact()) return HeightValue(*exact_ * *o.exact_);
  return HeightValue(iv_ * o.iv_);
}

HeightValue HeightValue::operator/(const HeightValue& o) const {
  if (is_exact() && o.is_exact()) {
    if (*o.exact_ == 0) fail("DivisionByZero", "height quotient by zero");
    return HeightValue(*exact_ / *o.exact_);
  }
  return HeightValue(iv_ / o.iv_);
}

HeightValue HeightValue::scale(const mpq_class& s) const {
  if (is_exact()) return HeightValue(*exact_ * s);
  return HeightValue(iv_ * Interval::from_mpq(s));
}

std::string HeightValue::str() const {
  if (is_exact()) return exact_->get_str();
  return "[" + iv_.lo_str(20) + ", " + iv_.hi_str(20) + "]";
}

Place Place::finite_prime(const mpz_class& p) {
  Place v;
  v.kind = Kind::FinitePrime;
  v.prime = p;
  return v;
}

Place Place::irreducible(const UPoly& pi) {
  Place v;
  v.kind = Kind::FiniteIrreducible;
  v.pi = pi.monic();
  v.weight = pi.deg();
  return v;
}

Place Place::infinity() {
  Place v;
  v.kind = Kind::InfinityFF;
  return v;
}

std::string Place::str(const std::string& var) const {
  switch (kind) {
    case Kind::FinitePrime:
      return "p=" + prime.get_str();
    case Kind::ArchimedeanQ:
      return "inf";
    case Kind::FiniteIrreducible:
      return "pi=" + pi.str(var);
    case Kind::InfinityFF:
      return "inf";
  }
  return "";
}

namespace {

int zval(const mpz_class& n, const mpz_class& p) {
  if (n == 0) fail("ZeroElement", "valuation of zero");
  mpz_class m = n;
  return static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

void check_kind(const BaseField& K, const Place& v) {
  bool ff = K.is_function_field();
  bool ffplace = v.kind == Place::Kind::FiniteIrreducible || v.kind == Place::Kind::InfinityFF;
  if (ff != ffplace) fail("PlaceMismatch", "place does not belong to the base field");
}

}  // namespace

int valuation(const Place& v, const Elem& x) {
  if (x.is_zero()) fail("ZeroElement", "valuation of zero");
  switch (v.kind) {
    case Place::Kind::FinitePrime: {
      mpq_class c = x.constant_value();
      return zval(c.get_num(), v.prime) - zval(c.get_den(), v.prime);
    }
    case Place::Kind::FiniteIrreducible:
      return valuation(x.num(), v.pi) - valuation(x.den(), v.pi);
    case Place::Kind::InfinityFF:
      return -x.degree();
    case Place::Kind::ArchimedeanQ:
      break;
  }
  fail("PlaceMismatch", "archimedean place has no valuation");
}

HeightValue log_abs(const BaseField& K, const Place& v, const Elem& x) {
  if (x.is_zero()) fail("ZeroElement", "log absolute value of zero");
  check_kind(K, v);
  switch (v.kind) {
    case Place::Kind::FinitePrime:
      return HeightValue(Interval::log_of(v.prime) * Interval(-valuation(v, x)));
    case Place::Kind::ArchimedeanQ:
      return HeightValue(Interval::log_of(mpq_class(abs(x.constant_value()))));
    case Place::Kind::FiniteIrreducible:
      return HeightValue(mpq_class(-valuation(v, x) * v.weight));
    case Place::Kind::InfinityFF:
      return HeightValue(mpq_class(x.degree()));
  }
  return HeightValue();
}

std::vector<Place> support(const BaseField& K, const Elem& x) {
  if (x.is_zero()) fail("ZeroElement", "support of zero");
  std::vector<Place> out;
  if (!K.is_function_field()) {
    mpq_class c = x.constant_value();
    std::map<mpz_class, int> primes;
    if (c.get_num() != 1 && c.get_num() != -1)
      for (const auto& [p, e] : factor_integer(c.get_num())) primes[p] += e;
    if (c.get_den() != 1)
      for (const auto& [p, e] : factor_integer(c.get_den())) primes[p] += e;
    for (const auto& [p, e] : primes) out.push_back(Place::finite_prime(p));
    out.push_back(Place::archimedean());
    return out;
  }
  std::vector<UPoly> pis;
  for (const UPoly* f : {&x.num(), &x.den()}) {
    if (f->deg() < 1) continue;
    for (const auto& [g, e] : factor(*f).factors) pis.push_back(g);
  }
  std::sort(pis.begin(), pis.end());
  pis.erase(std::unique(pis.begin(), pis.end()), pis.end());
  for (const auto& g : pis) out.push_back(Place::irreducible(g));
  out.push_back(Place::infinity());
  return out;
}

bool product_formula_check(const BaseField& K, const Elem& x, HeightValue* sum) {
  HeightValue s = K.is_function_field() ? HeightValue(mpq_class(0)) : HeightValue(Interval(0));
  for (const auto& v : support(K, x)) s = s + log_abs(K, v, x);
  if (sum) *sum = s;
  return s.contains_zero();
}

std::vector<mpz_class> primitive_integer_vector(const std::vector<Elem>& coords) {
  mpz_class l = 1, g = 0;
  for (const auto& x : coords) {
    mpq_class c = x.constant_value();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<mpz_class> v;
  for (const auto& x : coords) {
    mpq_class c = x.constant_value() * l;
    v.push_back(c.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.back().get_mpz_t());
  }
  if (g == 0) fail("AllZero", "all coordinates vanish");
  for (auto& c : v) c /= g;
  for (const auto& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& d : v) d = -d;
    break;
  }
  return v;
}

namespace {

// Polynomial coordinates with gcd 1.
std::vector<UPoly> primitive_poly_vector(const std::vector<Elem>& coords) {
  uint64_t p = coords.empty() ? 0 : coords[0].p();
  UPoly l = UPoly::constant(p, 1);
  for (const auto& x : coords) {
    if (x.is_zero()) continue;
    l = l / gcd(l, x.den()) * x.den();
  }
  std::vector<UPoly> v;
  UPoly g(p);
  for (const auto& x : coords) {
    v.push_back(x.is_zero() ? UPoly(p) : x.num() * (l / x.den()));
    g = gcd(g, v.back());
  }
  if (g.is_zero()) fail("AllZero", "all coordinates vanish");
  for (auto& c : v) c = c / g;
  return v;
}

}  // namespace

std::vector<Elem> canonical_representative(const BaseField& K, const std::vector<Elem>& coords) {
  if (coords.empty()) fail("AllZero", "empty coordinate list");
  std::vector<Elem> out;
  if (!K.is_function_field()) {
    for (const auto& c : primitive_integer_vector(coords)) out.emplace_back(0, mpq_class(c));
    return out;
  }
  std::vector<UPoly> v = primitive_poly_vector(coords);
  mpq_class s = 0;
  for (const auto& c : v)
    if (!c.is_zero()) {
      s = c.inv(c.lc());
      break;
    }
  for (const auto& c : v) out.emplace_back(c.scale(s));
  return out;
}

bool projectively_equal(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.size() != b.size()) return false;
  // a_i b_j = a_j b_i for all pairs, and the same zero pattern.
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return false;
  }
  size_t k = 0;
  while (k < a.size() && a[k].is_zero()) ++k;
  if (k == a.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] * b[k] != a[k] * b[i]) return false;
  return true;
}

HeightValue weil_height(const BaseField& K, const std::vector<Elem>& coords) {
  if (coords.empty()) fail("AllZero", "empty coordinate list");
  if (!K.is_function_field()) {
    mpz_class m = 0;
    for (const auto& c : primitive_integer_vector(coords))
      if (abs(c) > m) m = abs(c);
    return HeightValue(Interval::log_of(m));
  }
  std::vector<UPoly> v = primitive_poly_vector(coords);
  int d = -1;
  for (const auto& c : v) d = std::max(d, c.deg());
  return HeightValue(mpq_class(d));
}

HeightValue vector_height(const BaseField& K, const std::vector<Elem>& coeffs) {
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const Elem& x) { return x.is_zero(); }))
    fail("AllZero", "all coefficients vanish");
  return weil_height(K, coeffs);
}

HeightValue weil_height_by_places(const BaseField& K, const std::vector<Elem>& coords) {
  std::vector<Place> places;
  for (const auto& x : coords) {
    if (x.is_zero()) continue;
    for (const auto& v : support(K, x)) {
      bool seen = false;
      for (const auto& w : places)
        if (w.kind == v.kind && w.prime == v.prime && w.pi == v.pi) seen = true;
      if (!seen) places.push_back(v);
    }
  }
  HeightValue total = K.is_function_field() ? HeightValue(mpq_class(0)) : HeightValue(Interval(0));
  for (const auto& v : places) {
    std::optional<HeightValue> best;
    for (const auto& x : coords) {
      if (x.is_zero()) continue;
      HeightValue l = log_abs(K, v, x);
      if (!best) {
        best = l;
      } else if (l.is_exact()) {
        if (l.exact() > best->exact()) best = l;
      } else {
        best = HeightValue(Interval::max(best->interval(), l.interval()));
      }
    }
    total = total + *best;
  }
  return total;
}

}  // namespace hk
