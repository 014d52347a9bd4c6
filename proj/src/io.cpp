#include "hk/io.hpp"

#include <cctype>
#include <optional>

#include "hk/error.hpp"

namespace hk {

BaseField parse_field(const std::string& tag, const std::string& var) {
  if (tag == "Q") return BaseField::rationals();
  std::string suffix = "(" + var + ")";
  if (tag == "Q" + suffix) return BaseField::rational_functions(var);
  if (tag.rfind("F_", 0) == 0 && tag.size() > 2 + suffix.size() &&
      tag.compare(tag.size() - suffix.size(), suffix.size(), suffix) == 0) {
    std::string ps = tag.substr(2, tag.size() - 2 - suffix.size());
    if (ps.empty() || ps.find_first_not_of("0123456789") != std::string::npos || ps.size() > 18)
      fail("ParseError", "bad characteristic in field tag '" + tag + "'");
    return BaseField::finite_functions(std::stoull(ps), var);
  }
  fail("ParseError", "unknown field tag '" + tag + "'");
}

json to_json(const HeightValue& h) {
  json j;
  if (h.is_exact()) {
    std::string q = h.exact().get_str();
    j["exact"] = q;
    j["lo"] = q;
    j["hi"] = q;
  } else {
    j["lo"] = h.interval().lo_str(kJsonDigits);
    j["hi"] = h.interval().hi_str(kJsonDigits);
  }
  return j;
}

json to_json(const BaseField& K, const Elem& x) { return x.str(K.var); }

json to_json(const BaseField& K, const std::vector<Elem>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str(K.var));
  return a;
}

json to_json(const BaseField& K, const MPoly& f) {
  json terms = json::object();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    std::string key;
    for (size_t i = 0; i < it->first.size(); ++i) key += (i ? "," : "") + std::to_string(it->first[i]);
    terms[key] = it->second.str(K.var);
  }
  return json{{"text", f.str(K)}, {"terms", terms}};
}

json to_json(const BoundReport& r, bool latex) {
  json j;
  j["kind"] = r.kind;
  json in = json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  j["inputs"] = in;
  if (r.threshold) j["threshold"] = to_json(*r.threshold);
  j[r.bound_name] = r.bound.get_str();
  j["value"] = to_json(r.value);
  for (const auto& [k, v] : r.extras) j[k] = v;
  json verdicts = json::array();
  for (const auto& [c, v] : r.verdicts) verdicts.push_back({{"condition", c}, {"verdict", verdict_name(v)}});
  j["hypothesis_verdicts"] = verdicts;
  j["provenance"] = r.provenance;
  if (latex) j["latex"] = r.latex;
  return j;
}

std::vector<Elem> parse_elems(const BaseField& K, const json& arr) {
  if (!arr.is_array()) fail("ParseError", "expected an array of field elements");
  std::vector<Elem> v;
  for (const auto& x : arr) {
    if (x.is_string()) {
      v.push_back(parse_elem(K, x.get<std::string>()));
    } else if (x.is_number_integer()) {
      v.push_back(parse_elem(K, std::to_string(x.get<long long>())));
    } else {
      fail("ParseError", "field elements are strings or integers");
    }
  }
  return v;
}

MPoly parse_poly(const BaseField& K, int nvars, const json& j) {
  if (j.is_string()) return parse_mpoly(K, nvars, j.get<std::string>());
  if (!j.is_object()) fail("ParseError", "polynomial must be a string or an object");
  const json& terms = j.contains("terms") ? j.at("terms") : j;
  MPoly f(K.p, nvars);
  for (const auto& [key, val] : terms.items()) {
    if (key == "text") continue;
    Exps e;
    size_t pos = 0;
    while (pos <= key.size()) {
      size_t q = key.find(',', pos);
      std::string part = key.substr(pos, q == std::string::npos ? std::string::npos : q - pos);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        fail("ParseError", "bad exponent key '" + key + "'");
      e.push_back(std::stoi(part));
      if (q == std::string::npos) break;
      pos = q + 1;
    }
    if (static_cast<int>(e.size()) != nvars) fail("ParseError", "exponent key '" + key + "' has wrong length");
    if (!val.is_string()) fail("ParseError", "coefficients are strings");
    f.add_term(e, parse_elem(K, val.get<std::string>()));
  }
  return f;
}

namespace {

struct Val {
  std::optional<mpq_class> q;
  Interval iv;
};

Val exact(const mpq_class& q) { return {q, Interval::from_mpq(q)}; }
Val real(Interval iv) { return {std::nullopt, std::move(iv)}; }

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  Val parse() {
    Val v = expr();
    skip();
    if (i_ != s_.size()) error("trailing characters");
    return v;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  [[noreturn]] void error(const std::string& m) {
    fail("ParseError", m + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Val expr() {
    Val a = term();
    for (;;) {
      if (eat('+')) {
        Val b = term();
        a = (a.q && b.q) ? exact(*a.q + *b.q) : real(a.iv + b.iv);
      } else if (eat('-')) {
        Val b = term();
        a = (a.q && b.q) ? exact(*a.q - *b.q) : real(a.iv - b.iv);
      } else {
        return a;
      }
    }
  }

  Val term() {
    Val a = unary();
    for (;;) {
      if (eat('*')) {
        Val b = unary();
        a = (a.q && b.q) ? exact(*a.q * *b.q) : real(a.iv * b.iv);
      } else if (eat('/')) {
        Val b = unary();
        if (b.q && *b.q == 0) error("division by zero");
        a = (a.q && b.q) ? exact(*a.q / *b.q) : real(a.iv / b.iv);
      } else {
        return a;
      }
    }
  }

  Val unary() {
    if (eat('-')) {
      Val a = unary();
      return a.q ? exact(-*a.q) : real(-a.iv);
    }
    return power();
  }

  Val power() {
    Val b = primary();
    if (!eat('^')) return b;
    Val e = unary();
    if (!e.q || e.q->get_den() != 1 || !e.q->get_num().fits_slong_p()) error("exponent must be an integer");
    long k = e.q->get_num().get_si();
    if (k > 1000000 || k < -1000000) error("exponent too large");
    if (b.q) {
      mpz_class n, d;
      mpz_pow_ui(n.get_mpz_t(), b.q->get_num_mpz_t(), std::labs(k));
      mpz_pow_ui(d.get_mpz_t(), b.q->get_den_mpz_t(), std::labs(k));
      if (k < 0 && n == 0) error("zero to a negative power");
      mpq_class r = k >= 0 ? mpq_class(n, d) : mpq_class(d, n);
      r.canonicalize();
      return exact(r);
    }
    Interval r = b.iv.pow(std::labs(k));
    return real(k >= 0 ? r : Interval(1) / r);
  }

  Val primary() {
    skip();
    if (i_ >= s_.size()) error("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Val v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      mpz_class num(s_.substr(j, i_ - j));
      mpz_class den = 1;
      if (i_ < s_.size() && s_[i_] == '.') {
        ++i_;
        size_t k = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        for (size_t t = k; t < i_; ++t) {
          num = num * 10 + (s_[t] - '0');
          den *= 10;
        }
      }
      mpq_class q(num, den);
      q.canonicalize();
      return exact(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string id = s_.substr(j, i_ - j);
      if (id == "e") return real(Interval::e());
      if (id != "log" && id != "sqrt") error("unknown identifier '" + id + "'");
      if (!eat('(')) error("expected '('");
      Val a = expr();
      if (!eat(')')) error("expected ')'");
      if (id == "log") {
        if (a.q) {
          if (*a.q <= 0) error("log of a nonpositive number");
          if (*a.q == 1) return exact(0);
          return real(Interval::log_of(*a.q));
        }
        if (!a.iv.certainly_positive()) error("log of a possibly nonpositive number");
        return real(a.iv.log());
      }
      if (a.q) {
        if (*a.q < 0) error("sqrt of a negative number");
        if (mpz_perfect_square_p(a.q->get_num_mpz_t()) && mpz_perfect_square_p(a.q->get_den_mpz_t())) {
          mpz_class n, d;
          mpz_sqrt(n.get_mpz_t(), a.q->get_num_mpz_t());
          mpz_sqrt(d.get_mpz_t(), a.q->get_den_mpz_t());
          return exact(mpq_class(n, d));
        }
      } else if (!a.iv.certainly_nonnegative()) {
        error("sqrt of a possibly negative number");
      }
      return real(a.iv.sqrt());
    }
    error(std::string("unexpected character '") + c + "'");
  }
};

std::string type_of(const json& j) {
  if (j.is_object()) return "object";
  if (j.is_array()) return "array";
  if (j.is_string()) return "string";
  if (j.is_boolean()) return "boolean";
  if (j.is_number_integer()) return "integer";
  if (j.is_number()) return "number";
  return "null";
}

bool type_matches(const json& doc, const std::string& t) {
  std::string have = type_of(doc);
  return have == t || (t == "number" && have == "integer");
}

void check(const json& doc, const json& schema, const json& root, const std::string& path) {
  if (schema.contains("$ref")) {
    std::string ref = schema.at("$ref").get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) fail("InternalError", "unsupported schema reference " + ref);
    check(doc, root.at("definitions").at(ref.substr(prefix.size())), root, path);
    return;
  }
  if (schema.contains("anyOf")) {
    for (const auto& alt : schema.at("anyOf")) {
      try {
        check(doc, alt, root, path);
        return;
      } catch (const Error&) {
      }
    }
    fail("ParseError", path + ": matches none of the allowed shapes");
  }
  if (schema.contains("type")) {
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_array()) {
      for (const auto& x : t) ok = ok || type_matches(doc, x.get<std::string>());
    } else {
      ok = type_matches(doc, t.get<std::string>());
    }
    if (!ok) fail("ParseError", path + ": expected " + t.dump() + ", got " + type_of(doc));
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& x : schema.at("enum")) ok = ok || x == doc;
    if (!ok) fail("ParseError", path + ": value not in " + schema.at("enum").dump());
  }
  if (schema.contains("minimum") && doc.is_number() && doc.get<double>() < schema.at("minimum").get<double>())
    fail("ParseError", path + ": below minimum " + schema.at("minimum").dump());
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema.at("required"))
        if (!doc.contains(k.get<std::string>())) fail("ParseError", path + ": missing field '" + k.get<std::string>() + "'");
    const json* props = schema.contains("properties") ? &schema.at("properties") : nullptr;
    bool closed = schema.contains("additionalProperties") && schema.at("additionalProperties") == false;
    for (const auto& [k, v] : doc.items()) {
      if (props && props->contains(k)) {
        check(v, props->at(k), root, path + "." + k);
      } else if (closed) {
        fail("ParseError", path + ": unknown field '" + k + "'");
      }
    }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema.at("minItems").get<size_t>())
      fail("ParseError", path + ": too few items");
    if (schema.contains("maxItems") && doc.size() > schema.at("maxItems").get<size_t>())
      fail("ParseError", path + ": too many items");
    if (schema.contains("items"))
      for (size_t i = 0; i < doc.size(); ++i) check(doc[i], schema.at("items"), root, path + "[" + std::to_string(i) + "]");
  }
}

}  // namespace

HeightValue parse_height_expr(const std::string& s) {
  Val v = ExprParser(s).parse();
  return v.q ? HeightValue(*v.q) : HeightValue(v.iv);
}

void validate(const json& doc, const json& schema) { check(doc, schema, schema, "$"); }

}  // namespace hk
