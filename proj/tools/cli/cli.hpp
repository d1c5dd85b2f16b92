#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hartman/hartman_function.hpp"
#include "hartman/json_io.hpp"
#include "hartman/step_function.hpp"

namespace hartman::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kUndecided = 3;

/// Validation and I/O problems; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  bool strict = false;
  std::optional<std::string> json;  ///< "" writes JSON to stdout
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

/// Where a sequence comes from: a CSV window or one of the built-in realizations.
struct SequenceSource {
  std::string input;
  std::vector<std::string> cut;  ///< alpha=…, beta=…
  int cos2 = 0;
  std::string character;
  std::string amplitude = "1";
  bool alternating = false;
  std::string function;                 ///< step function JSON realized over generators
  std::vector<std::string> generators;  ///< torus characters of the embedding
  std::vector<std::int64_t> units;      ///< torsion units, one per finite factor
  std::int64_t shift = 0;

  void add_options(CLI::App* app);
  HartmanFunction load() const;
};

/// Default averaging radius: the sampled window, else 10⁵.
std::int64_t default_radius(const HartmanFunction& phi, std::int64_t requested);

StepFunction load_step_function(const std::string& path);
Json read_json(const std::string& path);

/// Writes JSON to --json (file or stdout); returns false when no JSON was requested.
bool emit_json(const Global& g, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

/// Adds every subcommand; each sets `run` to its action when selected.
void register_commands(CLI::App& app, Global& global, std::function<int()>& run);

}  // namespace hartman::cli
