#include "hk/mpoly.hpp"

#include <cctype>
#include <sstream>

#include "hk/error.hpp"

namespace hk {

MPoly MPoly::constant(uint64_t p, int nvars, const Elem& c) {
  MPoly r(p, nvars);
  r.add_term(Exps(nvars, 0), c);
  return r;
}

MPoly MPoly::monomial(uint64_t p, const Exps& e, const Elem& c) {
  MPoly r(p, static_cast<int>(e.size()));
  r.add_term(e, c);
  return r;
}

MPoly MPoly::var(uint64_t p, int nvars, int i) {
  Exps e(nvars, 0);
  e[i] = 1;
  return monomial(p, e, Elem::one(p));
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool MPoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

Elem MPoly::coeff(const Exps& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Elem::zero(p_) : it->second;
}

void MPoly::add_term(const Exps& e, const Elem& c) {
  if (static_cast<int>(e.size()) != n_) fail("ArityMismatch", "exponent length differs from variable count");
  if (c.is_zero()) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

std::vector<Elem> MPoly::coefficient_vector() const {
  std::vector<Elem> v;
  v.reserve(t_.size());
  for (const auto& [e, c] : t_) v.push_back(c);
  return v;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r(*this);
  if (r.n_ == 0 && r.t_.empty()) r.n_ = o.n_, r.p_ = o.p_;
  for (const auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(p_, n_);
  for (const auto& [e1, c1] : t_) {
    for (const auto& [e2, c2] : o.t_) {
      Exps e(n_);
      for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

MPoly MPoly::scale(const Elem& c) const {
  MPoly r(p_, n_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : t_) r.t_.emplace(e, x * c);
  return r;
}

MPoly MPoly::mul_monomial(const Exps& m, const Elem& c) const {
  MPoly r(p_, n_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : t_) {
    Exps f(e);
    for (int i = 0; i < n_; ++i) f[i] += m[i];
    r.t_.emplace(std::move(f), x * c);
  }
  return r;
}

void MPoly::add_scaled_shift(const MPoly& o, const Exps& m, const Elem& c) {
  if (c.is_zero()) return;
  Exps f(n_);
  for (const auto& [e, x] : o.t_) {
    for (int i = 0; i < n_; ++i) f[i] = e[i] + m[i];
    add_term(f, x * c);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (n_ == 0 && t_.empty()) n_ = o.n_, p_ = o.p_;
  for (const auto& [e, x] : o.t_) add_term(e, x);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (n_ == 0 && t_.empty()) n_ = o.n_, p_ = o.p_;
  for (const auto& [e, x] : o.t_) add_term(e, -x);
  return *this;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly r = constant(p_, n_, Elem::one(p_)), b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

MPoly MPoly::compose(const std::vector<MPoly>& vals) const {
  if (static_cast<int>(vals.size()) != n_) fail("ArityMismatch", "substitution list has wrong length");
  int m = vals.empty() ? 0 : vals[0].nvars();
  MPoly r(p_, m);
  // Cache powers of each substituted value.
  std::vector<std::vector<MPoly>> pw(n_);
  for (const auto& [e, c] : t_) {
    MPoly term = constant(p_, m, c);
    for (int i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(constant(p_, m, Elem::one(p_)));
      while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * vals[i]);
      term *= cache[e[i]];
    }
    r += term;
  }
  return r;
}

Elem MPoly::eval(const std::vector<Elem>& x) const {
  Elem r = Elem::zero(p_);
  for (const auto& [e, c] : t_) {
    Elem term = c;
    for (int i = 0; i < n_; ++i)
      if (e[i]) term *= x[i].pow(e[i]);
    r += term;
  }
  return r;
}

MPoly MPoly::embed(int nvars, const std::vector<int>& map) const {
  MPoly r(p_, nvars);
  for (const auto& [e, c] : t_) {
    Exps f(nvars, 0);
    for (int i = 0; i < n_; ++i) f[map[i]] += e[i];
    r.add_term(f, c);
  }
  return r;
}

MPoly MPoly::specialize(const mpq_class& a) const {
  MPoly r(p_, n_);
  for (const auto& [e, c] : t_) r.add_term(e, Elem(p_, c.eval(a)));
  return r;
}

MPoly MPoly::derivative(int i) const {
  MPoly r(p_, n_);
  for (const auto& [e, c] : t_) {
    if (!e[i]) continue;
    Exps f(e);
    --f[i];
    r.add_term(f, c * Elem(p_, e[i]));
  }
  return r;
}

std::vector<std::string> default_var_names(int nvars) {
  std::vector<std::string> v;
  for (int i = 0; i < nvars; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::string MPoly::str(const BaseField& K, const std::vector<std::string>& names0) const {
  if (t_.empty()) return "0";
  std::vector<std::string> names = names0.empty() ? default_var_names(n_) : names0;
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs;
    bool neg = false;
    if (c.is_constant()) {
      mpq_class v = c.constant_value();
      if (!K.p && v < 0) neg = true, v = -v;
      cs = (v == 1 && !mono.empty()) ? "" : v.get_str();
    } else {
      cs = "(" + c.str(K.var) + ")";
    }
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    os << cs;
    if (!cs.empty() && !mono.empty()) os << "*";
    os << mono;
  }
  return os.str();
}

std::vector<Exps> monomials_of_degree(int n, int d) {
  std::vector<Exps> out;
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  Exps e(n, 0);
  // Descending lex: first coordinate runs from d down to 0.
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

namespace {

bool exps_divides(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps exps_sub(const Exps& b, const Exps& a) {
  Exps r(b);
  for (size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
  return r;
}

}  // namespace

bool divide_exact(const MPoly& a, const MPoly& b, MPoly& q) {
  if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
  q = MPoly(a.p(), a.nvars());
  MPoly r = a;
  const Exps& lb = b.lead_exps();
  Elem ilc = b.lead_coeff().inv();
  while (!r.is_zero()) {
    const Exps& lr = r.lead_exps();
    if (!exps_divides(lb, lr)) return false;
    Exps m = exps_sub(lr, lb);
    Elem c = r.lead_coeff() * ilc;
    q.add_term(m, c);
    r.add_scaled_shift(b, m, -c);
  }
  return true;
}

MPoly reduce(const MPoly& f, const std::vector<MPoly>& g) {
  MPoly p = f, rem(f.p(), f.nvars());
  std::vector<Elem> ilc;
  for (const auto& h : g) ilc.push_back(h.lead_coeff().inv());
  while (!p.is_zero()) {
    const Exps lp = p.lead_exps();
    bool divided = false;
    for (size_t i = 0; i < g.size(); ++i) {
      if (!exps_divides(g[i].lead_exps(), lp)) continue;
      Elem c = p.lead_coeff() * ilc[i];
      p.add_scaled_shift(g[i], exps_sub(lp, g[i].lead_exps()), -c);
      divided = true;
      break;
    }
    if (!divided) {
      rem.add_term(lp, p.lead_coeff());
      p.add_term(lp, -p.lead_coeff());
    }
  }
  return rem;
}

namespace {

class Parser {
 public:
  Parser(const BaseField& K, int n, const std::string& s) : K_(K), n_(n), s_(s) {}

  MPoly run() {
    MPoly r = expr();
    skip();
    if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& m) { fail("ParseError", m + " at offset " + std::to_string(i_) + " in \"" + s_ + "\""); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  MPoly cst(const Elem& c) { return MPoly::constant(K_.p, n_, c); }

  MPoly expr() {
    MPoly r(K_.p, n_);
    bool neg = false;
    if (peek('+')) {
      ++i_;
    } else if (peek('-')) {
      ++i_;
      neg = true;
    }
    MPoly t = term();
    r = neg ? -t : t;
    for (;;) {
      if (peek('+')) {
        ++i_;
        r += term();
      } else if (peek('-')) {
        ++i_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  bool starts_primary() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  MPoly term() {
    MPoly r = factor();
    for (;;) {
      if (peek('*')) {
        ++i_;
        r *= factor();
      } else if (peek('/')) {
        ++i_;
        MPoly d = factor();
        if (d.is_zero()) error("division by zero");
        if (d.size() != 1 || d.total_degree() != 0) error("divisor must not involve coordinates");
        r = r.scale(d.lead_coeff().inv());
      } else if (starts_primary()) {
        r *= factor();
      } else {
        return r;
      }
    }
  }

  MPoly factor() {
    if (peek('-')) {
      ++i_;
      return -factor();
    }
    MPoly b = primary();
    if (peek('^')) {
      ++i_;
      skip();
      size_t j = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (j == i_) error("expected exponent");
      int k = std::stoi(s_.substr(j, i_ - j));
      return b.pow(k);
    }
    return b;
  }

  MPoly primary() {
    skip();
    if (i_ >= s_.size()) error("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      MPoly r = expr();
      if (!peek(')')) error("expected ')'");
      ++i_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return cst(Elem(K_.p, mpq_class(mpz_class(s_.substr(j, i_ - j)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string id = s_.substr(j, i_ - j);
      if (id == K_.var) {
        if (!K_.is_function_field()) error("field variable used over Q");
        return cst(Elem::t(K_.p));
      }
      int v = -1;
      static const std::string alias = "xyzw", ualias = "XYZW";
      if (id.size() == 1 && alias.find(id[0]) != std::string::npos) v = static_cast<int>(alias.find(id[0]));
      if (id.size() == 1 && ualias.find(id[0]) != std::string::npos) v = static_cast<int>(ualias.find(id[0]));
      if (id.size() > 1 && (id[0] == 'x' || id[0] == 'X') &&
          id.find_first_not_of("0123456789", 1) == std::string::npos)
        v = std::stoi(id.substr(1));
      if (v < 0) error("unknown identifier '" + id + "'");
      if (v >= n_) error("variable '" + id + "' out of range");
      return MPoly::var(K_.p, n_, v);
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const BaseField& K_;
  int n_;
  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

MPoly parse_mpoly(const BaseField& K, int nvars, const std::string& s) { return Parser(K, nvars, s).run(); }

Elem parse_elem(const BaseField& K, const std::string& s) {
  MPoly m = parse_mpoly(K, 0, s);
  if (m.is_zero()) return Elem::zero(K.p);
  return m.lead_coeff();
}

}  // namespace hk
