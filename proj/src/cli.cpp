#include "hk/cli.hpp"

#include <map>
#include <stdexcept>

#include "hk/error.hpp"

namespace hk {

namespace {

struct SchemaText {
  const char* name;
  const char* body;
};

const SchemaText kSchemas[] = {
#include "hk_schemas.inc"
};

std::string schema_key(const std::string& command) {
  std::string k = command;
  for (auto& c : k)
    if (c == ' ') c = '_';
  return k;
}

const std::map<std::string, json>& schema_table() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> t;
    for (const auto& s : kSchemas) t[s.name] = json::parse(s.body);
    return t;
  }();
  return table;
}

BaseField field_of(const json& in) { return parse_field(in.at("field").get<std::string>(), in.value("var", "t")); }

Endo endo_of(const BaseField& K, const json& in) {
  const json& m = in.at("map");
  int nv = static_cast<int>(m.size());
  std::vector<MPoly> F;
  for (const auto& f : m) F.push_back(parse_poly(K, nv, f));
  return Endo(K, F);
}

json points_json(const BaseField& K, const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(K, p));
  return a;
}

const char* irr_name(Irreducibility i) { return i == Irreducibility::Certified ? "certified" : "unverified"; }

FieldCase case_of(const json& in) { return in.at("case").get<std::string>() == "q" ? FieldCase::Rational : FieldCase::FunctionField; }

HeightValue hv(const json& in, const char* key) { return parse_height_expr(in.at(key).get<std::string>()); }

GradedIdeal ideal_of(const BaseField& K, const json& j) {
  int given = static_cast<int>(j.contains("point")) + static_cast<int>(j.contains("hypersurface")) +
              static_cast<int>(j.contains("gens"));
  if (given != 1) fail("ParseError", "ideal needs exactly one of point, hypersurface, gens");
  if (j.contains("point")) return GradedIdeal::point(K, parse_elems(K, j.at("point")));
  int nv = j.value("nvars", 3);
  if (j.contains("hypersurface")) return GradedIdeal::hypersurface(Hypersurface(K, parse_poly(K, nv, j.at("hypersurface"))));
  std::vector<MPoly> gens;
  for (const auto& g : j.at("gens")) gens.push_back(parse_poly(K, nv, g));
  return GradedIdeal(K, nv, gens);
}

json ideal_summary(const GradedIdeal& I) {
  json j;
  j["nvars"] = I.nvars;
  if (I.r >= 0) j["r"] = I.r;
  if (I.degree >= 0) j["degree"] = I.degree;
  if (I.height) j["height"] = to_json(*I.height);
  if (I.nice_D) {
    j["D"] = *I.nice_D;
    j["nice_source"] = I.nice_source;
  }
  return j;
}

SubspaceFF subspace_of(const BaseField& K, const json& in) {
  Mat rows;
  for (const auto& r : in.at("rows")) rows.push_back(parse_elems(K, r));
  int amb = static_cast<int>(rows[0].size());
  return SubspaceFF(K, amb, rows);
}

using Handler = JobResult (*)(const JobSpec&);

JobResult ok(json doc) { return {0, std::move(doc)}; }

JobResult report(const BoundReport& r, bool latex) { return {r.hypotheses_hold() ? 0 : 2, to_json(r, latex)}; }

JobResult cmd_height_point(const JobSpec& j) {
  BaseField K = field_of(j.input);
  return ok({{"h", to_json(weil_height(K, parse_elems(K, j.input.at("coords"))))}});
}

JobResult cmd_height_vector(const JobSpec& j) {
  BaseField K = field_of(j.input);
  return ok({{"h", to_json(vector_height(K, parse_elems(K, j.input.at("coeffs"))))}});
}

JobResult cmd_height_hypersurface(const JobSpec& j) {
  BaseField K = field_of(j.input);
  Hypersurface X(K, parse_poly(K, j.input.value("nvars", 3), j.input.at("F")));
  ChowForm ch = chow_form(X);
  return ok({{"degree", X.degree()},
             {"irreducibility", irr_name(X.irreducibility)},
             {"chow_form", to_json(K, ch.poly)},
             {"h", to_json(philippon_height(K, ch))}});
}

JobResult cmd_canheight_point(const JobSpec& j) {
  BaseField K = field_of(j.input);
  Endo f = endo_of(K, j.input);
  Point x = parse_elems(K, j.input.at("point"));
  mpq_class eps(j.input.value("eps", "1/1000000"));
  eps.canonicalize();
  if (eps <= 0) fail("ParseError", "eps must be positive");
  CanonicalHeightResult r = canonical_height(f, x, eps, static_cast<int>(j.budget.value_or(4096)));
  return ok({{"h", to_json(r.value)},
             {"weil", to_json(weil_height(K, x))},
             {"steps", r.steps},
             {"precision", r.precision}});
}

JobResult cmd_canheight_curve(const JobSpec& j) {
  BaseField K = field_of(j.input);
  Endo f = endo_of(K, j.input);
  Hypersurface X(K, parse_poly(K, f.N + 1, j.input.at("F")));
  HypersurfaceHeight r = canonical_height_hypersurface(f, X, j.input.value("m", 1));
  json chain = json::array();
  for (const auto& Y : r.chain) chain.push_back(to_json(K, Y.F));
  return ok({{"value", to_json(r.value)}, {"center", to_json(r.center)}, {"tail", to_json(r.tail)}, {"images", chain}});
}

JobResult cmd_orbit(const JobSpec& j) {
  BaseField K = field_of(j.input);
  Endo f = endo_of(K, j.input);
  Point x = parse_elems(K, j.input.at("point"));
  OrbitRecord o = orbit(f, x, j.input.value("max_steps", 64));
  json doc = {{"points", points_json(K, o.points)}, {"tail_length", o.tail_length}};
  doc["cycle_length"] = o.cycle_length ? json(*o.cycle_length) : json(nullptr);
  doc["truncated"] = o.truncated;
  if (j.input.value("decide", false))
    doc["preperiodic"] = is_preperiodic(f, x, static_cast<int>(j.budget.value_or(100000)));
  return ok(doc);
}

JobResult cmd_prep_census(const JobSpec& j) {
  BaseField K = field_of(j.input);
  Endo f = endo_of(K, j.input);
  MPoly C = parse_poly(K, f.N + 1, j.input.at("F"));
  CensusReport r = preperiodic_census_on_curve(f, C, mpz_class(j.input.at("bound").get<long>()), j.workers,
                                               j.budget.value_or(20000000));
  return ok({{"cutoff", to_json(r.cutoff)},
             {"enumeration_bound", r.enumeration_bound.get_str()},
             {"points", points_json(K, r.points)},
             {"count", r.points.size()},
             {"verified_complete", r.verified_complete},
             {"candidates", r.candidates},
             {"note", r.note}});
}

JobResult cmd_resultant(const JobSpec& j) {
  BaseField K = field_of(j.input);
  Endo f = endo_of(K, j.input);
  Elem r = f.resultant();
  return ok({{"resultant", to_json(K, r)}, {"morphism", !r.is_zero()}, {"h_map", to_json(f.height())}});
}

JobResult cmd_chow(const JobSpec& j) {
  BaseField K = field_of(j.input);
  const json& in = j.input;
  if (in.contains("points") == in.contains("F")) fail("ParseError", "chow needs exactly one of F and points");
  json doc;
  if (in.contains("points")) {
    std::vector<Point> pts;
    for (const auto& p : in.at("points")) pts.push_back(parse_elems(K, p));
    ChowForm ch = chow_form(K, pts);
    doc["degree"] = ch.degree;
    doc["chow_form"] = to_json(K, ch.poly);
    doc["h"] = to_json(philippon_height(K, ch));
    return ok(doc);
  }
  Hypersurface X(K, parse_poly(K, in.value("nvars", 3), in.at("F")));
  ChowForm ch = chow_form(X);
  doc["degree"] = X.degree();
  doc["irreducibility"] = irr_name(X.irreducibility);
  doc["chow_form"] = to_json(K, ch.poly);
  doc["h"] = to_json(philippon_height(K, ch));
  if (in.contains("dtuple")) {
    DegreeDHeight r = degree_d_height(X, in.at("dtuple").get<std::vector<int>>(), j.budget.value_or(20000));
    doc["degree_d"] = {{"value", to_json(r.value)},
                       {"expected", to_json(r.expected)},
                       {"identity_holds", r.identity_holds},
                       {"eliminant", to_json(K, r.eliminant)}};
  }
  if (in.contains("map")) {
    Endo f = endo_of(K, in);
    PushforwardResult p = pushforward(f, X);
    doc["pushforward"] = {{"image", to_json(K, p.image.F)},
                          {"degree", p.image.degree()},
                          {"fiber_degree", p.fiber_degree},
                          {"degree_identity", f.d * X.degree() == p.image.degree() * p.fiber_degree}};
  }
  if (in.contains("slices")) {
    if (!j.seed) fail("ParseError", "slicing samples need --seed");
    SlicingReport s = slicing_minimum_test(X, in.at("slices").get<int>(), *j.seed);
    json sl = json::array();
    for (const auto& x : s.slices) {
      json pts = json::array();
      for (const auto& p : x.points) {
        json pj = {{"description", p.description}, {"height", to_json(p.height)}};
        if (p.coords) pj["coords"] = to_json(K, *p.coords);
        pts.push_back(pj);
      }
      sl.push_back({{"line", to_json(K, x.line)}, {"points", pts}, {"min_height", to_json(x.min_height)},
                    {"holds", x.holds}});
    }
    doc["slicing"] = {{"normalized_height", to_json(s.normalized_height)},
                      {"holds", s.holds},
                      {"resampled", s.resampled},
                      {"slices", sl}};
  }
  return ok(doc);
}

JobResult cmd_siegel_height(const JobSpec& j) {
  SubspaceFF V = subspace_of(field_of(j.input), j.input);
  return ok({{"dim", V.dim()},
             {"ambient", V.ambient},
             {"h_S", to_json(schmidt_height(V))},
             {"h_S_reduced", schmidt_height_reduced(V)},
             {"h_S_perp", to_json(schmidt_height(orthogonal_complement(V)))}});
}

JobResult cmd_siegel_chain(const JobSpec& j) {
  BaseField K = field_of(j.input);
  SubspaceFF V = subspace_of(K, j.input);
  mpq_class h = schmidt_height(V).exact();
  SiegelChain c = siegel_chain(V);
  json W = json::array();
  bool all = true;
  for (size_t i = 0; i < c.W.size(); ++i) {
    mpq_class hi = schmidt_height(c.W[i]).exact();
    mpq_class bound = h * mpq_class(static_cast<long>(i + 1), V.dim());
    bound.canonicalize();
    bool holds = hi <= bound;
    all = all && holds;
    W.push_back({{"dim", i + 1}, {"h_S", hi.get_str()}, {"bound", bound.get_str()}, {"holds", holds}});
  }
  return ok({{"h_S", h.get_str()}, {"degrees", c.degrees}, {"chain", W}, {"holds", all}});
}

JobResult cmd_siegel_smallform(const JobSpec& j) {
  BaseField K = field_of(j.input);
  SubspaceFF V = subspace_of(K, j.input);
  Vec q = small_linear_form(V);
  mpq_class ht = h_tilde(V, q).exact();
  mpq_class bound = -schmidt_height(V).exact() / V.dim();
  return ok({{"q", to_json(K, q)}, {"h_tilde", ht.get_str()}, {"bound", bound.get_str()}, {"holds", ht <= bound}});
}

JobResult cmd_siegel_smallsection(const JobSpec& j) {
  BaseField K = field_of(j.input);
  GradedIdeal I = ideal_of(K, j.input.at("ideal"));
  SmallSection s = small_section(I, j.input.at("delta").get<int>());
  return ok({{"ideal", ideal_summary(I)},
             {"q", to_json(K, s.q)},
             {"value", to_json(s.value)},
             {"bound", to_json(s.bound)},
             {"bound_holds", s.bound_holds},
             {"nonmember", s.nonmember},
             {"threshold", to_json(s.threshold)},
             {"Hg", s.Hg},
             {"Ha", to_json(s.Ha)}});
}

JobResult cmd_hilbert_geom(const JobSpec& j) {
  BaseField K = field_of(j.input);
  GradedIdeal I = ideal_of(K, j.input.at("ideal"));
  int delta = j.input.at("delta").get<int>();
  long Hg = geometric_hilbert(I, delta);
  mpz_class cb = chardin_bound(I, delta);
  return ok({{"ideal", ideal_summary(I)}, {"Hg", Hg}, {"chardin_bound", cb.get_str()}, {"holds", mpz_class(Hg) <= cb}});
}

JobResult cmd_hilbert_arith(const JobSpec& j) {
  BaseField K = field_of(j.input);
  GradedIdeal I = ideal_of(K, j.input.at("ideal"));
  int delta = j.input.at("delta").get<int>();
  HeightValue Ha = arithmetic_hilbert(I, delta);
  json doc = {{"ideal", ideal_summary(I)}, {"Ha", to_json(Ha)}};
  std::optional<int> D = j.input.contains("D") ? std::optional<int>(j.input.at("D").get<int>()) : I.nice_D;
  if (D && I.height && I.r >= 1 && delta >= *D + 1) {
    mpq_class lb = arith_hilbert_lower_bound(I.height->exact(), *D, I.r, delta);
    doc["D"] = *D;
    doc["lower_bound"] = lb.get_str();
    doc["holds"] = Ha.exact() >= lb;
  }
  return ok(doc);
}

JobResult cmd_bound_zhang(const JobSpec& j) {
  const json& in = j.input;
  return report(zhang_bound(in.at("N"), in.at("d"), in.at("r"), in.at("degX"), hv(in, "hphi"), hv(in, "hhat"), case_of(in)),
                j.latex);
}

JobResult cmd_bound_zhang2(const JobSpec& j) {
  const json& in = j.input;
  return report(zhang2_bound(in.at("N"), in.at("d"), in.at("dimX"), in.at("degLX"), hv(in, "C"), hv(in, "hhat"),
                             case_of(in), in.value("general", false)),
                j.latex);
}

JobResult cmd_bound_m(const JobSpec& j) {
  const json& in = j.input;
  MChoice m = choice_of_m(in.at("d"), in.at("dimX"), hv(in, "c"), hv(in, "hhat"), in.at("N"), case_of(in));
  json doc = {{"m", m.m}, {"clamped", m.clamped}, {"verified", verdict_name(m.verified)}, {"ratio", to_json(m.ratio)}};
  return {m.verified == Verdict::True ? 0 : 2, doc};
}

JobResult cmd_bound_fermat(const JobSpec& j) {
  const json& in = j.input;
  HeightValue hphi(mpq_class(0)), hf(mpq_class(1));
  if (in.contains("hratio")) {
    if (in.contains("hphi") || in.contains("hf")) fail("ParseError", "give either hratio or hphi and hf");
    hphi = hv(in, "hratio");
  } else {
    if (!in.contains("hphi") || !in.contains("hf")) fail("ParseError", "fermat needs hratio or both hphi and hf");
    hphi = hv(in, "hphi");
    hf = hv(in, "hf");
  }
  mpz_class n;
  if (n.set_str(in.at("n").get<std::string>(), 10) != 0) fail("ParseError", "n must be a decimal integer");
  return report(fermat_bounds(in.at("d"), n, hphi, hf, case_of(in)), j.latex);
}

JobResult cmd_bound_prop52(const JobSpec& j) {
  const json& in = j.input;
  return report(prop52_n_threshold(in.at("ell"), hv(in, "hf"), hv(in, "delta"), case_of(in)), j.latex);
}

JobResult cmd_bound_prop53(const JobSpec& j) {
  const json& in = j.input;
  return ok({{"value", to_json(prop53_lower(in.at("ell"), hv(in, "hph"), case_of(in)))}});
}

JobResult cmd_bound_prop54(const JobSpec& j) {
  const json& in = j.input;
  return ok({{"value", to_json(prop54_lower(in.at("ell"), hv(in, "hf")))}});
}

JobResult cmd_bound_dm(const JobSpec& j) {
  const json& in = j.input;
  return report(dm_report(in.at("N"), in.at("dimX"), in.at("degX"), in.at("d"), in.at("m")), j.latex);
}

JobResult cmd_selftest(const JobSpec& j) {
  json doc = run_selftest(j.seed.value_or(1));
  return {doc.at("passed").get<bool>() ? 0 : 1, doc};
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"height point", cmd_height_point},
      {"height vector", cmd_height_vector},
      {"height hypersurface", cmd_height_hypersurface},
      {"canheight point", cmd_canheight_point},
      {"canheight curve", cmd_canheight_curve},
      {"orbit", cmd_orbit},
      {"prep census", cmd_prep_census},
      {"resultant", cmd_resultant},
      {"chow", cmd_chow},
      {"siegel height", cmd_siegel_height},
      {"siegel chain", cmd_siegel_chain},
      {"siegel smallform", cmd_siegel_smallform},
      {"siegel smallsection", cmd_siegel_smallsection},
      {"hilbert geom", cmd_hilbert_geom},
      {"hilbert arith", cmd_hilbert_arith},
      {"bound zhang", cmd_bound_zhang},
      {"bound zhang2", cmd_bound_zhang2},
      {"bound m", cmd_bound_m},
      {"bound fermat", cmd_bound_fermat},
      {"bound prop52", cmd_bound_prop52},
      {"bound prop53", cmd_bound_prop53},
      {"bound prop54", cmd_bound_prop54},
      {"bound dm", cmd_bound_dm},
      {"selftest", cmd_selftest},
  };
  return h;
}

JobResult error_result(const std::string& name, const std::string& detail) {
  return {1, json{{"error", name}, {"detail", detail}}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, h] : handlers()) v.push_back(n);
    return v;
  }();
  return names;
}

const json& command_schema(const std::string& command) {
  const auto& t = schema_table();
  auto it = t.find(schema_key(command));
  if (it == t.end()) fail("ParseError", "no schema for command '" + command + "'");
  return it->second;
}

JobResult run_job(const JobSpec& job) {
  try {
    if (job.precision < 64 || job.precision > 1 << 20) fail("ParseError", "precision must lie in [64, 2^20] bits");
    if (job.budget && *job.budget <= 0) fail("ParseError", "budget must be positive");
    if (job.workers < 1) fail("ParseError", "workers must be positive");
    Handler h = nullptr;
    for (const auto& [n, f] : handlers())
      if (n == job.command) h = f;
    if (!h) fail("ParseError", "unknown command '" + job.command + "'");
    if (job.command != "selftest") validate(job.input, command_schema(job.command));
    PrecisionScope scope(job.precision);
    return h(job);
  } catch (const Error& e) {
    std::string what = e.what();
    return error_result(e.name(), what.substr(std::min(what.size(), e.name().size() + 2)));
  } catch (const json::exception& e) {
    return error_result("ParseError", e.what());
  } catch (const std::invalid_argument& e) {
    return error_result("ParseError", e.what());
  } catch (const std::exception& e) {
    return error_result("InternalError", e.what());
  }
}

}  // namespace hk
