#include "hk/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "hk/error.hpp"
#include "zpoly.hpp"

namespace hk {

using detail::ZPoly;

mpq_class reduce_mod(uint64_t p, const mpq_class& a) {
  if (p == 0) return a;
  uint64_t n = mpz_fdiv_ui(a.get_num_mpz_t(), p);
  uint64_t d = mpz_fdiv_ui(a.get_den_mpz_t(), p);
  if (d == 0) fail("DivisionByZero", "denominator divisible by the characteristic");
  return mpq_class(static_cast<unsigned long>(detail::mulmod(n, detail::invmod(d, p), p)));
}

mpq_class inv_mod(uint64_t p, const mpq_class& a) {
  if (a == 0) fail("DivisionByZero", "inverse of zero");
  if (p == 0) return 1 / a;
  return mpq_class(static_cast<unsigned long>(detail::invmod(mpz_fdiv_ui(a.get_num_mpz_t(), p), p)));
}

UPoly::UPoly(uint64_t p, std::vector<mpq_class> c) : p_(p), c_(std::move(c)) {
  if (p_) {
    for (auto& x : c_) x = reduce_mod(p_, x);
  }
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::constant(uint64_t p, const mpq_class& c) { return UPoly(p, {c}); }

UPoly UPoly::monomial(uint64_t p, const mpq_class& c, int k) {
  std::vector<mpq_class> v(k + 1);
  v[k] = c;
  return UPoly(p, std::move(v));
}

mpq_class UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

mpq_class UPoly::reduce(const mpq_class& a) const { return reduce_mod(p_, a); }
mpq_class UPoly::inv(const mpq_class& a) const { return inv_mod(p_, a); }

mpq_class UPoly::add(const mpq_class& a, const mpq_class& b) const {
  if (!p_) return a + b;
  mpq_class s = a + b;
  if (s >= p_) s -= p_;
  return s;
}

mpq_class UPoly::mul(const mpq_class& a, const mpq_class& b) const {
  if (!p_) return a * b;
  mpz_class z = a.get_num() * b.get_num();
  return mpq_class(mpz_class(z % mpz_class(static_cast<unsigned long>(p_))));
}

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly r(p_);
  r.c_.resize(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < c_.size()) r.c_[i] = c_[i];
    if (i < o.c_.size()) r.c_[i] = add(r.c_[i], o.c_[i]);
  }
  r.trim();
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (auto& x : r.c_) x = p_ ? (x == 0 ? mpq_class(0) : mpq_class(p_) - x) : mpq_class(-x);
  return r;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  UPoly r(p_);
  if (c_.empty() || o.c_.empty()) return r;
  if (p_) {
    std::vector<mpz_class> acc(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j)
        mpz_addmul(acc[i + j].get_mpz_t(), c_[i].get_num_mpz_t(), o.c_[j].get_num_mpz_t());
    r.c_.resize(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r.c_[i] = mpq_class(mpz_class(acc[i] % mpz_class(static_cast<unsigned long>(p_))));
  } else {
    r.c_.resize(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

UPoly UPoly::scale(const mpq_class& s) const {
  mpq_class t = reduce(s);
  UPoly r(p_);
  if (t == 0) return r;
  r.c_.reserve(c_.size());
  for (const auto& x : c_) r.c_.push_back(mul(x, t));
  r.trim();
  return r;
}

UPoly UPoly::pow(unsigned k) const {
  UPoly r = constant(p_, 1), b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

UPoly UPoly::shift(int k) const {
  if (c_.empty() || k == 0) return *this;
  UPoly r(p_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

bool UPoly::operator<(const UPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

mpq_class UPoly::eval(const mpq_class& x) const {
  mpq_class r = 0, xr = reduce(x);
  for (size_t i = c_.size(); i-- > 0;) r = add(mul(r, xr), c_[i]);
  return r;
}

UPoly UPoly::derivative() const {
  UPoly r(p_);
  for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(mul(c_[i], reduce(mpq_class(static_cast<unsigned long>(i)))));
  r.trim();
  return r;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return scale(inv(lc()));
}

UPoly UPoly::reverse(int n) const {
  if (deg() > n) fail("DegreeError", "reversal degree below polynomial degree");
  std::vector<mpq_class> v(n + 1);
  for (size_t i = 0; i < c_.size(); ++i) v[n - i] = c_[i];
  return UPoly(p_, std::move(v));
}

UPoly UPoly::compose(const UPoly& g) const {
  UPoly r(p_);
  for (size_t i = c_.size(); i-- > 0;) r = r * g + constant(p_, c_[i]);
  return r;
}

int UPoly::low_order() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

mpq_class UPoly::content() const {
  if (p_) fail("Unsupported", "content is defined over Q only");
  if (c_.empty()) return 0;
  mpz_class g = 0, l = 1;
  for (const auto& x : c_) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  mpq_class r(g, l);
  r.canonicalize();
  if (lc() < 0) r = -r;
  return r;
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return *this;
  if (p_) return monic();
  return scale(1 / content());
}

std::string UPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    mpq_class c = c_[i];
    if (c == 0) continue;
    bool neg = !p_ && c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
  uint64_t p = a.p();
  std::vector<mpq_class> rc = a.coeffs();
  int db = b.deg();
  if (static_cast<int>(rc.size()) - 1 < db) {
    q = UPoly(p);
    r = a;
    return;
  }
  std::vector<mpq_class> qc(rc.size() - db);
  mpq_class il = b.inv(b.lc());
  const auto& bc = b.coeffs();
  for (int i = static_cast<int>(rc.size()) - 1 - db; i >= 0; --i) {
    mpq_class c = b.mul(rc[i + db], il);
    if (c == 0) continue;
    qc[i] = c;
    for (int j = 0; j <= db; ++j) {
      if (bc[j] == 0) continue;
      if (p)
        rc[i + j] = reduce_mod(p, rc[i + j] - c * bc[j]);
      else
        rc[i + j] -= c * bc[j];
    }
  }
  rc.resize(db);
  q = UPoly(p, std::move(qc));
  r = UPoly(p, std::move(rc));
}

UPoly operator/(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) fail("InexactDivision", "polynomial quotient is not exact");
  return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return r;
}

bool divides(const UPoly& b, const UPoly& a) { return (a % b).is_zero(); }

namespace {

ZPoly to_z(const UPoly& f) {
  UPoly g = f.primitive();
  ZPoly z;
  for (const auto& c : g.coeffs()) z.push_back(c.get_num());
  return z;
}

UPoly from_z(const ZPoly& z) {
  std::vector<mpq_class> c(z.begin(), z.end());
  return UPoly(0, std::move(c));
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.p() == 0) return from_z(detail::zgcd(to_z(a), to_z(b))).monic();
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly xgcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
  uint64_t p = a.p();
  UPoly r0 = a, r1 = b, s0 = UPoly::constant(p, 1), s1(p), t0(p), t1 = UPoly::constant(p, 1);
  while (!r1.is_zero()) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = UPoly(p);
    t = UPoly(p);
    return r0;
  }
  mpq_class il = r0.inv(r0.lc());
  s = s0.scale(il);
  t = t0.scale(il);
  return r0.scale(il);
}

int valuation(const UPoly& f, const UPoly& pi) {
  if (f.is_zero()) fail("ZeroElement", "valuation of zero");
  int v = 0;
  UPoly g = f;
  for (;;) {
    UPoly q, r;
    divmod(g, pi, q, r);
    if (!r.is_zero()) return v;
    ++v;
    g = std::move(q);
  }
}

namespace {

// Yun's algorithm in characteristic zero; valid over F_p when the input has no p-th power part.
void yun(const UPoly& f, int mult, std::vector<std::pair<UPoly, int>>& out) {
  UPoly fp = f.derivative();
  UPoly a = gcd(f, fp);
  UPoly b = f / a, c = fp / a;
  int i = 1;
  while (b.deg() > 0) {
    UPoly d = c - b.derivative();
    UPoly g = gcd(b, d);
    if (g.deg() > 0) out.push_back({g.monic(), i * mult});
    b = b / g;
    c = d / g;
    ++i;
  }
}

void sqf_fp(const UPoly& f, int mult, std::vector<std::pair<UPoly, int>>& out) {
  uint64_t p = f.p();
  int i = 1;
  UPoly c = gcd(f, f.derivative());
  UPoly w = f / c;
  while (w.deg() > 0) {
    UPoly y = gcd(w, c);
    UPoly z = w / y;
    if (z.deg() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.deg() > 0) {
    std::vector<mpq_class> root;
    const auto& cc = c.coeffs();
    for (size_t k = 0; k < cc.size(); k += p) root.push_back(cc[k]);
    sqf_fp(UPoly(p, std::move(root)).monic(), mult * static_cast<int>(p), out);
  }
}

}  // namespace

std::vector<std::pair<UPoly, int>> squarefree(const UPoly& f) {
  if (f.is_zero()) fail("ZeroElement", "square-free decomposition of zero");
  std::vector<std::pair<UPoly, int>> out;
  if (f.deg() == 0) return out;
  if (f.p() == 0)
    yun(f.monic(), 1, out);
  else
    sqf_fp(f.monic(), 1, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

bool is_square_rational(const mpq_class& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

bool is_square_poly(const UPoly& f) {
  if (f.is_zero()) return true;
  uint64_t p = f.p();
  const mpq_class& l = f.lc();
  if (p == 0) {
    if (!is_square_rational(l)) return false;
  } else if (p != 2) {
    uint64_t a = mpz_get_ui(l.get_num_mpz_t());
    if (detail::powmod(a, (p - 1) / 2, p) != 1) return false;
  }
  for (const auto& [g, e] : squarefree(f)) {
    (void)g;
    if (e % 2) return false;
  }
  return true;
}

}  // namespace hk
