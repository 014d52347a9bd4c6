#include <doctest.h>

#include "hk/cli.hpp"
#include "hk/error.hpp"
#include "hk/random.hpp"

#include <mpfr.h>

using namespace hk;

namespace {

JobResult job(const std::string& command, const json& input, long precision = 256) {
  JobSpec s;
  s.command = command;
  s.input = input;
  s.precision = precision;
  return run_job(s);
}

// Parses a decimal endpoint with directed rounding at 1024 bits.
struct Endpoint {
  mpfr_t v;
  Endpoint(const json& s, mpfr_rnd_t rnd) {
    mpfr_init2(v, 1024);
    mpfr_set_str(v, s.get<std::string>().c_str(), 10, rnd);
  }
  ~Endpoint() { mpfr_clear(v); }
};

// The printed interval [lo, hi] meets x, with x evaluated at 512 bits.
bool meets(const json& h, const Interval& x) {
  Endpoint lo(h.at("lo"), MPFR_RNDD), hi(h.at("hi"), MPFR_RNDU);
  return mpfr_cmp(lo.v, x.hi_ptr()) <= 0 && mpfr_cmp(hi.v, x.lo_ptr()) >= 0;
}

bool inside(const json& inner, const json& outer) {
  Endpoint a(inner.at("lo"), MPFR_RNDD), b(inner.at("hi"), MPFR_RNDU);
  Endpoint c(outer.at("lo"), MPFR_RNDD), d(outer.at("hi"), MPFR_RNDU);
  return mpfr_cmp(c.v, a.v) <= 0 && mpfr_cmp(b.v, d.v) <= 0;
}

mpq_class q(const json& j) {
  mpq_class r(j.get<std::string>());
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("field tags") {
  CHECK(parse_field("Q").kind == BaseField::Kind::Q);
  CHECK(parse_field("Q(t)").kind == BaseField::Kind::QT);
  BaseField F = parse_field("F_7(t)");
  CHECK(F.kind == BaseField::Kind::FpT);
  CHECK(F.p == 7);
  CHECK(parse_field("Q(s)", "s").tag() == "Q(s)");
  CHECK_THROWS_AS(parse_field("F_8(t)"), Error);
  CHECK_THROWS_AS(parse_field("R"), Error);
}

TEST_CASE("height expressions") {
  HeightValue a = parse_height_expr("7/2*log(3)");
  CHECK_FALSE(a.is_exact());
  CHECK(a.interval().overlaps(Interval::from_mpq(mpq_class(7, 2)) * Interval::log_of(mpz_class(3))));
  CHECK(parse_height_expr("2^10 - 1/3").exact() == mpq_class(3071, 3));
  CHECK(parse_height_expr("-(4)").exact() == -4);
  CHECK(parse_height_expr("1.25").exact() == mpq_class(5, 4));
  CHECK(parse_height_expr("sqrt(4)*e").interval().overlaps(Interval(2) * Interval::e()));
  CHECK_THROWS_AS(parse_height_expr("log("), Error);
  CHECK_THROWS_AS(parse_height_expr("1/0"), Error);
}

TEST_CASE("polynomial documents round-trip") {
  Rng rng(61);
  BaseField QT = BaseField::rational_functions();
  for (int i = 0; i < 20; ++i) {
    MPoly f = random_form(rng, QT, 3, 2, 9, 2);
    json j = to_json(QT, f);
    CHECK(parse_poly(QT, 3, j) == f);
    CHECK(parse_poly(QT, 3, j.at("text")) == f);
    CHECK(parse_poly(QT, 3, j.at("terms")) == f);
  }
}

TEST_CASE("schema validation") {
  const json& s = command_schema("height point");
  CHECK_NOTHROW(validate(json{{"field", "Q"}, {"coords", {"2", 3}}}, s));
  CHECK_THROWS_AS(validate(json{{"field", "Q"}}, s), Error);
  CHECK_THROWS_AS(validate(json{{"field", "Q"}, {"coords", {"2"}}, {"extra", 1}}, s), Error);
  CHECK_THROWS_AS(validate(json{{"field", "Q"}, {"coords", "2"}}, s), Error);
  CHECK_THROWS_AS(validate(json{{"N", 2}, {"d", 2}, {"r", 1}, {"degX", 2}, {"hphi", "0"}, {"hhat", "1"}, {"case", "x"}},
                           command_schema("bound zhang")),
                  Error);
  for (const auto& c : command_names())
    if (c != "selftest") CHECK_NOTHROW(command_schema(c));
}

TEST_CASE("jobs report heights and errors") {
  JobResult r = job("height point", {{"field", "Q"}, {"coords", {"2", "3"}}});
  REQUIRE(r.exit_code == 0);
  {
    PrecisionScope ps(512);
    CHECK(meets(r.doc["h"], Interval::log_of(mpz_class(3))));
  }

  JobResult ff = job("height point", {{"field", "Q(t)"}, {"coords", {"t", "t+1"}}});
  CHECK(ff.doc["h"]["exact"] == "1");

  JobResult bad = job("height point", {{"field", "Q"}, {"coords", {"0", "0"}}});
  CHECK(bad.exit_code == 1);
  CHECK(bad.doc["error"] == "AllZero");
  CHECK(job("height point", {{"field", "Q"}}).doc["error"] == "ParseError");
  CHECK(job("no such", json::object()).exit_code == 1);

  JobSpec s;
  s.command = "height point";
  s.input = {{"field", "Q"}, {"coords", {"2"}}};
  s.precision = 8;
  CHECK(run_job(s).doc["error"] == "ParseError");
}

TEST_CASE("bound jobs exit 2 when a hypothesis fails") {
  json in = {{"d", 2}, {"n", "134217728"}, {"case", "ff"}, {"hratio", "1"}};
  JobResult ok = job("bound fermat", in);
  CHECK(ok.exit_code == 0);
  CHECK(ok.doc["count_bound"] == mpz_class(mpz_class(1) << 142).get_str());
  in["n"] = "1000";
  CHECK(job("bound fermat", in).exit_code == 2);
}

TEST_CASE("outputs are byte-stable and tighten with precision") {
  json in = {{"field", "Q"}, {"map", {"x^2-y^2", "y^2"}}, {"point", {"3", "2"}}, {"eps", "1/1000"}};
  std::string a = job("canheight point", in).doc.dump(), b = job("canheight point", in).doc.dump();
  CHECK(a == b);
  JobResult lo = job("height point", {{"field", "Q"}, {"coords", {"5", "7"}}}, 128);
  JobResult hi = job("height point", {{"field", "Q"}, {"coords", {"5", "7"}}}, 512);
  CHECK(inside(hi.doc["h"], lo.doc["h"]));
}

TEST_CASE("output documents re-parse as inputs") {
  JobResult o = job("orbit", {{"field", "Q(t)"}, {"map", {"x^2", "t*y^2"}}, {"point", {"t", "1"}}, {"max_steps", 3}});
  REQUIRE(o.exit_code == 0);
  for (const auto& p : o.doc["points"]) {
    json in = {{"field", "Q(t)"}, {"coords", p}};
    CHECK(job("height point", in).exit_code == 0);
  }
  JobResult c = job("chow", {{"field", "Q(t)"}, {"F", "x*z-t*y^2"}});
  REQUIRE(c.exit_code == 0);
  BaseField QT = BaseField::rational_functions();
  MPoly ch = parse_poly(QT, 6, c.doc["chow_form"]);
  CHECK(ch.total_degree() == 4);

  JobResult s = job("siegel height", {{"field", "Q(t)"}, {"rows", {{"1", "t", "t^2"}, {"0", "1", "t^3+1"}}}});
  REQUIRE(s.exit_code == 0);
  CHECK(q(s.doc["h_S"]["exact"]) == 4);
}
