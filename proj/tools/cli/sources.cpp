#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"

namespace hartman::cli {

void SequenceSource::add_options(CLI::App* app) {
  auto* group = app->add_option_group("sequence", "exactly one sequence source");
  group->add_option("--input", input, "CSV window n,re,im")->check(CLI::ExistingFile);
  group->add_option("--cut", cut, "cut sequence: alpha=<character> beta=<p/q>")->expected(2);
  group->add_option("--cos2", cos2, "product of cos²(2πn/3^j), j = 1..n")->check(CLI::Range(1, 12));
  group->add_option("--character", character, "n ↦ amplitude·e^{2πinα}");
  group->add_flag("--alternating", alternating, "n ↦ (−1)^n");
  group->add_option("--function", function, "step function JSON realized over --generators");
  group->require_option(1);
  app->add_option("--amplitude", amplitude, "amplitude for --character: re or re,im");
  app->add_option("--generators", generators, "torus characters of the embedding for --function (space separated)");
  app->add_option("--units", units, "torsion units u_i for --function (default all 1)")->delimiter(',');
  app->add_option("--shift", shift, "evaluate at n + shift (realized sources)");
}

namespace {

std::complex<double> parse_amplitude(const std::string& text) {
  const auto comma = text.find(',');
  const auto re = parse_rational(text.substr(0, comma));
  const auto im = comma == std::string::npos ? Rational(0) : parse_rational(text.substr(comma + 1));
  return {to_double(re), to_double(im)};
}

HartmanFunction shifted(HartmanFunction phi, std::int64_t shift) {
  return shift == 0 ? phi : phi.translated(shift);
}

}  // namespace

HartmanFunction SequenceSource::load() const {
  try {
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw UsageError("cannot open " + input);
      if (shift != 0) throw UsageError("--shift applies to realized sources only");
      return read_csv(in);
    }
    if (!cut.empty()) {
      std::optional<Character> alpha;
      std::optional<Rational> beta;
      for (const auto& kv : cut) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--cut expects alpha=… beta=…");
        const auto key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "alpha") {
          alpha = parse_character(value);
        } else if (key == "beta") {
          beta = parse_rational(value);
        } else {
          throw UsageError("unknown --cut key '" + key + "'");
        }
      }
      if (!alpha || !beta) throw UsageError("--cut needs both alpha and beta");
      return shifted(cut_sequence(*alpha, *beta), shift);
    }
    if (cos2 > 0) return shifted(cos2_product(cos2), shift);
    if (!character.empty()) return shifted(character_sequence(parse_character(character), parse_amplitude(amplitude)), shift);
    if (alternating) return shifted(hartman::alternating(), shift);
    if (!function.empty()) {
      const auto f = load_step_function(function);
      std::vector<Character> gens;
      for (const auto& g : generators) gens.push_back(parse_character(g));
      if (static_cast<int>(gens.size()) != f.shape().torus_rank) {
        throw UsageError("--generators must list one character per torus coordinate");
      }
      auto u = units;
      if (u.empty()) u.assign(f.shape().finite_orders.size(), 1);
      auto comp = Compactification::from_embedding(std::move(gens), f.shape().finite_orders, u);
      return shifted(HartmanFunction::realized(std::move(comp), f), shift);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("no sequence source given");
}

std::int64_t default_radius(const HartmanFunction& phi, std::int64_t requested) {
  if (requested > 0) return requested;
  if (const auto r = phi.radius()) return *r;
  return 100000;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

StepFunction load_step_function(const std::string& path) {
  try {
    return step_function_from_json(read_json(path));
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed: " + path);
}

bool emit_json(const Global& g, const Json& j) {
  if (!g.json) return false;
  write_text_file(*g.json, dump(j));
  return true;
}

}  // namespace hartman::cli
