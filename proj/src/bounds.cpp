#include "hk/bounds.hpp"

#include "hk/dynamics.hpp"
#include "hk/error.hpp"
#include "hk/ffsiegel.hpp"

namespace hk {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "INCONCLUSIVE";
  }
}

bool BoundReport::hypotheses_hold() const {
  for (const auto& [c, v] : verdicts)
    if (v != Verdict::True) return false;
  return true;
}

namespace {

Interval iv(long v) { return Interval(v); }
Interval iv(const mpq_class& q) { return Interval::from_mpq(q); }
Interval iv(const mpz_class& z) { return Interval::from_mpz(z); }

// h(n) for a positive integer: log n over Q, 0 over function fields.
Interval h_int(const mpz_class& n, FieldCase f) { return f == FieldCase::Rational ? Interval::log_of(n) : iv(0L); }

Interval four_e_pow(unsigned long k) { return (iv(4L) * Interval::e()).pow(k); }

BaseField base_of(FieldCase f) {
  return f == FieldCase::Rational ? BaseField::rationals() : BaseField::rational_functions();
}

const char* case_name(FieldCase f) { return f == FieldCase::Rational ? "Q" : "function_field"; }

void require_positive(const HeightValue& h, const char* what) {
  if (!h.interval().certainly_positive()) fail("NonpositiveHeight", std::string(what) + " must be certainly positive");
}

void require_nonnegative(const HeightValue& h, const char* what) {
  if (!h.interval().certainly_nonnegative()) fail("InvalidArgument", std::string(what) + " must be nonnegative");
}

// Integer ceiling of a positive bound, at least 1.
mpz_class ceil_bound(const HeightValue& v) {
  mpz_class c;
  if (v.is_exact()) {
    mpz_cdiv_q(c.get_mpz_t(), v.exact().get_num_mpz_t(), v.exact().get_den_mpz_t());
  } else {
    c = v.interval().ceil_hi();
  }
  return c < 1 ? mpz_class(1) : c;
}

HeightValue max_one(const HeightValue& h) {
  if (h.is_exact()) return HeightValue(std::max(h.exact(), mpq_class(1)));
  return HeightValue(Interval::max(h.interval(), iv(1L)));
}

std::string tex(const HeightValue& h) {
  if (h.is_exact()) {
    const mpq_class& q = h.exact();
    if (q.get_den() == 1) return q.get_num().get_str();
    return "\\tfrac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
  }
  return h.interval().hi_str(12);
}

std::string tex_h(const char* arg, FieldCase f) {
  return f == FieldCase::Rational ? std::string("\\log ") + arg : std::string("0");
}

Verdict compare_ge(const Interval& a, const Interval& b) {
  if (b.certainly_le(a)) return Verdict::True;
  if (a.certainly_lt(b)) return Verdict::False;
  return Verdict::Inconclusive;
}

mpz_class pow_ui(long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// 3N(k+1) deg^2 (A num / hhat + 1)^(N+1), A = (2+6h(N+1))(k+1)^2 (4e)^(k+1).
Interval degree_shape(int N, int k, int deg, const Interval& num, const Interval& hhat, FieldCase f) {
  Interval A = (iv(2L) + iv(6L) * h_int(N + 1, f)) * iv(long(k + 1) * (k + 1)) * four_e_pow(k + 1);
  Interval inner = A * num / hhat + iv(1L);
  return iv(3L * N * (k + 1) * deg * deg) * inner.pow(N + 1);
}

}  // namespace

BoundReport zhang_bound(int N, int d, int r, int degX, const HeightValue& hPhi, const HeightValue& hhatX_lower,
                        FieldCase field) {
  if (N < 2 || d < 2) fail("InvalidArgument", "need N >= 2 and d >= 2");
  if (r < 1 || r >= N) fail("InvalidArgument", "need 1 <= r < N");
  if (degX < 1) fail("InvalidArgument", "degree must be positive");
  require_nonnegative(hPhi, "h(Phi)");
  require_positive(hhatX_lower, "canonical height lower bound");
  IngramConstants c = ingram_constants(N, d, base_of(field));
  Interval num = iv(c.c1) * hPhi.interval() + iv(c.c2) + c.c0.interval();
  BoundReport rep;
  rep.kind = "zhang";
  rep.inputs = {{"N", std::to_string(N)},          {"d", std::to_string(d)},   {"r", std::to_string(r)},
                {"degX", std::to_string(degX)},    {"hPhi", hPhi.str()},       {"hhatX_lower", hhatX_lower.str()},
                {"field", case_name(field)}};
  rep.threshold = HeightValue(hhatX_lower.interval() / (iv(2L * (r + 1)) * four_e_pow(r + 1)));
  rep.value = HeightValue(degree_shape(N, r, degX, num, hhatX_lower.interval(), field));
  rep.bound_name = "degree_bound";
  rep.bound = ceil_bound(rep.value);
  rep.extras = {{"c1", c.c1.get_str()}, {"c2", c.c2.get_str()}, {"c0", c.c0.str()}};
  rep.verdicts = {{"hhatX_lower > 0", Verdict::True}};
  rep.provenance = "quantitative fundamental inequality: degree of the exceptional subvariety";
  std::string R = std::to_string(r + 1), Nn = std::to_string(N);
  rep.latex = "3\\cdot " + Nn + "\\cdot " + R + "\\cdot " + std::to_string(degX) + "^2\\left((2+6\\cdot " +
              tex_h(std::to_string(N + 1).c_str(), field) + ")\\cdot " + R + "^2(4e)^{" + R + "}\\frac{" +
              c.c1.get_str() + "\\cdot " + tex(hPhi) + "+" + c.c2.get_str() + "+\\tfrac72 " +
              tex_h(std::to_string(N + 1).c_str(), field) + "}{" + tex(hhatX_lower) + "}+1\\right)^{" +
              std::to_string(N + 1) + "}";
  return rep;
}

HeightValue embedding_correction(int N, FieldCase field) {
  if (field == FieldCase::FunctionField) return HeightValue(mpq_class(0));
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), N + 1);
  return HeightValue(iv(2L) * Interval::log_of(f) + iv(2L) * Interval::log_of(mpz_class(N + 1)));
}

BoundReport zhang2_bound(int N, int d, int dimX, int degLX, const HeightValue& C_phi_iota,
                         const HeightValue& hhat_lower, FieldCase field, bool general_embedding) {
  if (N < 1 || d < 2) fail("InvalidArgument", "need N >= 1 and d >= 2");
  if (dimX < 0 || dimX >= N) fail("InvalidArgument", "need 0 <= dim X < N");
  if (degLX < 1) fail("InvalidArgument", "degree must be positive");
  require_nonnegative(C_phi_iota, "C(phi, iota)");
  require_positive(hhat_lower, "canonical height lower bound");
  HeightValue corr = embedding_correction(N, field);
  Interval C = C_phi_iota.interval();
  if (general_embedding) C += corr.interval();
  Interval num = C + iv(mpq_class(7, 2)) * h_int(N + 1, field);
  BoundReport rep;
  rep.kind = "zhang2";
  rep.inputs = {{"N", std::to_string(N)},
                {"d", std::to_string(d)},
                {"dimX", std::to_string(dimX)},
                {"degLX", std::to_string(degLX)},
                {"C_phi_iota", C_phi_iota.str()},
                {"hhat_lower", hhat_lower.str()},
                {"field", case_name(field)},
                {"general_embedding", general_embedding ? "true" : "false"}};
  rep.threshold = HeightValue(hhat_lower.interval() / (iv(2L * (dimX + 1)) * four_e_pow(dimX + 1)));
  rep.value = HeightValue(degree_shape(N, dimX, degLX, num, hhat_lower.interval(), field));
  rep.bound_name = "degree_bound";
  rep.bound = ceil_bound(rep.value);
  rep.extras = {{"prefactor", std::to_string(3L * N * (dimX + 1) * degLX * degLX)},
                {"embedding_correction", corr.str()}};
  rep.verdicts = {{"hhat_lower > 0", Verdict::True}};
  rep.provenance = "quantitative fundamental inequality for polarized endomorphisms";
  std::string K = std::to_string(dimX + 1), Np = std::to_string(N + 1);
  rep.latex = std::to_string(3L * N * (dimX + 1) * degLX * degLX) + "\\left(\\frac{(2+6\\cdot " +
              tex_h(Np.c_str(), field) + ")\\cdot " + K + "^2(4e)^{" + K + "}(" + tex(C_phi_iota) +
              (general_embedding ? "+" + tex(corr) : std::string()) + "+\\tfrac72 " + tex_h(Np.c_str(), field) +
              ")}{" + tex(hhat_lower) + "}+1\\right)^{" + Np + "}";
  return rep;
}

MChoice choice_of_m(int d, int dimX, const HeightValue& c_const, const HeightValue& hhatX, int N, FieldCase field) {
  if (d < 2 || dimX < 0 || N < 1) fail("InvalidArgument", "need d >= 2, dim X >= 0, N >= 1");
  require_nonnegative(c_const, "c");
  require_positive(hhatX, "canonical height");
  Interval hN = h_int(N + 1, field);
  Interval cc = c_const.interval() + iv(mpq_class(7, 2)) * hN;
  Interval K = iv(long(dimX + 1));
  Interval ratio = (iv(2L) + iv(6L) * hN) * K * K * four_e_pow(dimX + 1) * cc / hhatX.interval();
  MChoice out;
  out.ratio = HeightValue(ratio);
  long m = 0;
  if (ratio.certainly_positive() && iv(1L).certainly_lt(ratio)) {
    Interval L = ratio.log() / Interval::log_of(mpz_class(d));
    mpz_class f = L.floor_lo();
    m = f > 0 ? f.get_si() : 0;
  } else {
    out.clamped = !ratio.overlaps(iv(1L)) || ratio.certainly_lt(iv(1L));
  }
  // Least m with d^m >= ratio; the floor of the log is at most one step short.
  for (int guard = 0; guard < 64 && !ratio.certainly_le(iv(pow_ui(d, m))); ++guard) ++m;
  if (m == 0 && ratio.certainly_lt(iv(1L))) out.clamped = true;
  out.m = m;
  Interval dm = iv(pow_ui(d, m));
  Interval lhs = dm * hhatX.interval() / K - cc;
  Interval rhs = K * (iv(1L) + iv(6L) * hN) * four_e_pow(dimX + 1) * cc;
  out.verified = compare_ge(lhs, rhs);
  return out;
}

BoundReport fermat_bounds(int d, const mpz_class& n, const HeightValue& hPhi, const HeightValue& h_f, FieldCase field) {
  if (d < 2 || n < 2) fail("InvalidArgument", "need d >= 2 and n >= 2");
  require_nonnegative(hPhi, "h(Phi)");
  BoundReport rep;
  rep.kind = "fermat";
  rep.inputs = {{"d", std::to_string(d)},
                {"n", n.get_str()},
                {"hPhi", hPhi.str()},
                {"h_f", h_f.str()},
                {"field", case_name(field)}};
  rep.bound_name = "count_bound";
  mpz_class n2 = n * n;
  unsigned long d3 = static_cast<unsigned long>(d) * d * d;
  if (field == FieldCase::FunctionField) {
    require_positive(h_f, "h(Phi restricted to the line at infinity)");
    mpz_class need = pow_ui(2, 21) * pow_ui(d, 6);
    rep.verdicts = {{"n >= 2^21 d^6", n >= need ? Verdict::True : Verdict::False}};
    mpz_class pre = pow_ui(2, 79) * n2 * pow_ui(d, 9);
    if (hPhi.is_exact() && h_f.is_exact()) {
      mpq_class ratio = hPhi.exact() / h_f.exact();
      rep.value = HeightValue(mpq_class(pre) * ratio * ratio * ratio);
    } else {
      rep.value = HeightValue(iv(pre) * (hPhi.interval() / h_f.interval()).pow(3));
    }
    Interval s = Interval::from_mpz(mpz_class(d)).sqrt() + iv(1L);
    rep.threshold = HeightValue(h_f.interval() / (iv(32L) * four_e_pow(4) * s * s));
    rep.latex = "2^{79}\\cdot " + n.get_str() + "^2\\cdot " + std::to_string(d) + "^9\\left(\\frac{" + tex(hPhi) +
                "}{" + tex(h_f) + "}\\right)^3";
    rep.provenance = "Fermat curves over function fields: count of small points";
  } else {
    mpz_class need = pow_ui(2, 1600 * d3);
    rep.verdicts = {{"n >= 2^(1600 d^3)", n >= need ? Verdict::True : Verdict::False}};
    HeightValue a = max_one(hPhi), b = max_one(h_f);
    mpz_class pre = pow_ui(2, 1810 * d3) * n2;
    if (a.is_exact() && b.is_exact()) {
      mpq_class ratio = a.exact() / b.exact();
      rep.value = HeightValue(mpq_class(pre) * ratio * ratio * ratio);
    } else {
      rep.value = HeightValue(iv(pre) * (a.interval() / b.interval()).pow(3));
    }
    rep.threshold = HeightValue(b.interval() / (iv(32L) * four_e_pow(4) * Interval::pow2(500 * d3)));
    rep.latex = "2^{" + std::to_string(1810 * d3) + "}\\cdot " + n.get_str() + "^2\\left(\\frac{\\max\\{1," +
                tex(hPhi) + "\\}}{\\max\\{1," + tex(h_f) + "\\}}\\right)^3";
    rep.provenance = "Fermat curves over Q: count of small points";
  }
  rep.bound = ceil_bound(rep.value);
  return rep;
}

HeightValue fermat_height_lower(int d, const HeightValue& h_f, FieldCase field) {
  if (d < 2) fail("InvalidArgument", "need d >= 2");
  Interval c = iv(8L) * four_e_pow(2);
  if (field == FieldCase::FunctionField) {
    Interval s = Interval::from_mpz(mpz_class(d)).sqrt() + iv(1L);
    return HeightValue(h_f.interval() / (c * s * s));
  }
  unsigned long d3 = static_cast<unsigned long>(d) * d * d;
  return HeightValue(max_one(h_f).interval() / (c * Interval::pow2(500 * d3)));
}

BoundReport prop52_n_threshold(int ell, const HeightValue& h_f, const HeightValue& delta_lower, FieldCase field) {
  if (ell < 2) fail("InvalidArgument", "need l >= 2");
  require_nonnegative(h_f, "h(f)");
  require_positive(delta_lower, "diagonal height lower bound");
  IngramConstants c = ingram_constants(1, ell, base_of(field));
  Interval h4 = h_int(4, field);
  Interval num = iv(c.c1) * h_f.interval() + iv(c.c2) + iv(mpq_class(7, 2)) * h4;
  Interval A = (iv(2L) + iv(6L) * h4) * four_e_pow(2) * iv(16L);
  Interval inner = A * num / delta_lower.interval() + iv(1L);
  BoundReport rep;
  rep.kind = "prop52";
  rep.inputs = {{"ell", std::to_string(ell)},
                {"h_f", h_f.str()},
                {"delta_lower", delta_lower.str()},
                {"field", case_name(field)}};
  rep.value = HeightValue(iv(144L) * inner.pow(3));
  rep.bound_name = "n_threshold";
  rep.bound = ceil_bound(rep.value);
  rep.extras = {{"c1", c.c1.get_str()}, {"c2", c.c2.get_str()}};
  rep.provenance = "Fermat-to-diagonal comparison: admissible exponents n";
  rep.latex = "144\\left((2+6\\cdot " + tex_h("4", field) + ")(4e)^2 4^2\\frac{" + c.c1.get_str() + "\\cdot " +
              tex(h_f) + "+" + c.c2.get_str() + "+\\tfrac72 " + tex_h("4", field) + "}{" + tex(delta_lower) +
              "}+1\\right)^3";
  return rep;
}

HeightValue prop53_lower(int ell, const HeightValue& hPh_f, FieldCase field) {
  if (ell < 2) fail("InvalidArgument", "need l >= 2");
  mpz_class root;
  bool square = mpz_perfect_square_p(mpz_class(ell).get_mpz_t()) != 0;
  if (square) mpz_sqrt(root.get_mpz_t(), mpz_class(ell).get_mpz_t());
  HeightValue s = square ? HeightValue(mpq_class((root + 1) * (root + 1)))
                         : HeightValue((Interval::from_mpz(mpz_class(ell)).sqrt() + iv(1L)).pow(2));
  HeightValue main = hPh_f / s;
  if (field == FieldCase::FunctionField) return main;
  Interval log2 = Interval::log_of(mpz_class(2));
  mpq_class k(3 * (ell + 2), 2);
  k.canonicalize();
  Interval sub = iv(k) * log2 / s.interval() + iv(mpq_class(1, 2)) * log2;
  return HeightValue(main.interval() - sub);
}

HeightValue prop54_lower(int ell, const HeightValue& h_f) {
  if (ell < 2) fail("InvalidArgument", "need l >= 2");
  unsigned long e = 500UL * ell * ell * ell;
  HeightValue m = max_one(h_f);
  if (m.is_exact()) {
    mpq_class scale(mpz_class(1), pow_ui(2, e));
    return HeightValue(m.exact() * scale);
  }
  return HeightValue(m.interval() * Interval::pow2(-mpz_class(e)));
}

BoundReport dm_report(int N, int dimX, int degX, int d, int m) {
  long Dm = d_m_formula(N, dimX, degX, d, m);
  long dl = delta_m(Dm, dimX);
  BoundReport rep;
  rep.kind = "dm";
  rep.inputs = {{"N", std::to_string(N)},
                {"dimX", std::to_string(dimX)},
                {"degX", std::to_string(degX)},
                {"d", std::to_string(d)},
                {"m", std::to_string(m)}};
  rep.bound_name = "delta_m";
  rep.bound = dl;
  rep.value = HeightValue(mpq_class(dl));
  rep.extras = {{"D_m", std::to_string(Dm)}};
  long cap = 3L * N * degX * (dimX + 1);
  rep.verdicts = {{"delta_m <= 3N deg X (dim X + 1)", dl <= cap ? Verdict::True : Verdict::False}};
  rep.provenance = "niceness degree of the m-th iterate and the multiplicity degree";
  rep.latex = "D_m=\\left\\lfloor\\frac{(" + std::to_string(N) + "-" + std::to_string(dimX) + ")(" +
              std::to_string(degX) + "-1)}{" + std::to_string(d) + "^{" + std::to_string(m) + "}}\\right\\rfloor+" +
              std::to_string(dimX + 1) + "=" + std::to_string(Dm) + ",\\quad \\delta_m=2D_m+" +
              std::to_string(dimX + 2) + "=" + std::to_string(dl);
  return rep;
}

}  // namespace hk
