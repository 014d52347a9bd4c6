#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "hk/cli.hpp"

namespace {

std::string read_stream(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

// Inline JSON, "-" for stdin, or a file path.
hk::json load_input(const std::string& arg) {
  if (arg.empty()) return hk::json::object();
  if (arg == "-") return hk::json::parse(read_stream(std::cin));
  if (arg.find_first_not_of(" \t\n") != std::string::npos && arg[arg.find_first_not_of(" \t\n")] == '{')
    return hk::json::parse(arg);
  std::ifstream f(arg);
  if (!f) throw std::runtime_error("cannot open input file " + arg);
  return hk::json::parse(read_stream(f));
}

// Follows a local "#/definitions/..." reference one level.
const hk::json& resolve(const hk::json& schema, const hk::json& prop) {
  const std::string prefix = "#/definitions/";
  auto ref = prop.find("$ref");
  if (ref == prop.end() || ref->get<std::string>().rfind(prefix, 0) != 0) return prop;
  return schema.at("definitions").at(ref->get<std::string>().substr(prefix.size()));
}

struct Leaf {
  std::string command;
  CLI::App* app = nullptr;
  std::string input;
  // One flag per schema property; set values are merged over the positional document.
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heights of subvarieties, canonical heights and explicit bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  long precision = 256;
  uint64_t seed = 0;
  int workers = 1;
  long budget = 0;
  std::string out;
  bool latex = false;
  auto* seed_opt = app.add_option("--seed", seed, "seed for sampled subcommands");
  app.add_option("--precision", precision, "working precision in bits")->capture_default_str();
  app.add_option("--workers", workers, "threads for the census");
  auto* budget_opt = app.add_option("--budget", budget, "enumeration or iteration budget");
  app.add_option("--out", out, "write the document to this file");
  app.add_flag("--latex", latex, "include a LaTeX rendering of bound reports");

  std::vector<std::unique_ptr<Leaf>> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& name : hk::command_names()) {
    auto leaf = std::make_unique<Leaf>();
    leaf->command = name;
    auto sp = name.find(' ');
    if (sp == std::string::npos) {
      leaf->app = app.add_subcommand(name);
    } else {
      std::string group = name.substr(0, sp);
      if (!groups.count(group)) {
        groups[group] = app.add_subcommand(group);
        groups[group]->require_subcommand(1);
        groups[group]->fallthrough();
      }
      leaf->app = groups[group]->add_subcommand(name.substr(sp + 1));
    }
    leaf->app->fallthrough();
    if (name != "selftest") {
      leaf->app->add_option("input", leaf->input, "JSON document, file path, or - for stdin");
      const auto& schema = hk::command_schema(name);
      for (const auto& [key, prop] : schema.at("properties").items()) {
        const auto& spec = resolve(schema, prop);
        if (spec.value("type", "") == "boolean")
          leaf->app->add_flag("--" + key, leaf->switches[key]);
        else if (spec.value("type", "") == "integer" || spec.value("type", "") == "string" || spec.contains("enum"))
          leaf->app->add_option("--" + key, leaf->values[key]);
      }
    }
    leaves.push_back(std::move(leaf));
  }

  CLI11_PARSE(app, argc, argv);

  hk::JobSpec job;
  job.precision = precision;
  job.workers = workers;
  job.latex = latex;
  if (*seed_opt) job.seed = seed;
  if (*budget_opt) job.budget = budget;

  hk::JobResult result;
  try {
    for (const auto& leaf : leaves) {
      if (!leaf->app->parsed()) continue;
      job.command = leaf->command;
      job.input = load_input(leaf->input);
      if (job.command == "selftest") break;
      const auto& schema = hk::command_schema(job.command);
      for (const auto& [key, v] : leaf->values) {
        if (leaf->app->get_option("--" + key)->empty()) continue;
        if (resolve(schema, schema.at("properties").at(key)).value("type", "") == "integer") {
          size_t pos = 0;
          long x = std::stol(v, &pos);
          if (pos != v.size()) throw std::invalid_argument("--" + key + " expects an integer");
          job.input[key] = x;
        } else {
          job.input[key] = v;
        }
      }
      for (const auto& [key, on] : leaf->switches)
        if (on) job.input[key] = true;
      break;
    }
    result = hk::run_job(job);
  } catch (const std::exception& e) {
    result = {1, {{"error", "ParseError"}, {"detail", e.what()}}};
  }

  std::string text = result.doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 1;
    }
    f << text;
  }
  return result.exit_code;
}
