#include <cstdlib>
#include <iostream>

#include "cli.hpp"
#include "hartman/group_model.hpp"
#include "hartman/parallel.hpp"

int main(int argc, char** argv) {
  using namespace hartman::cli;
  CLI::App app{"Hartman measurable functions on Z: means, spectra, filters, realizations"};
  app.require_subcommand(1);
  Global global;
  std::string json_path;
  auto* json = app.add_option("--json", json_path, "write JSON (to the given file, or stdout)")->expected(0, 1);
  app.add_flag("--strict", global.strict, "exit 3 on undecided or uncertified results");
  app.add_option("--threads", global.threads, "worker cap (default $HARTMAN_THREADS, then all cores)")
      ->check(CLI::NonNegativeNumber);
  auto* seed = app.add_option("--seed", global.seed, "seed for randomized corpora");
  // Global flags may follow the subcommand.
  app.fallthrough();

  std::function<int()> run;
  register_commands(app, global, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  if (json->count() > 0) global.json = json_path;
  global.seed_given = seed->count() > 0;
  if (global.threads > 0) hartman::set_thread_count(global.threads);

  try {
    return run ? run() : kInvalid;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const hartman::CannotCertify& e) {
    std::cerr << "uncertified: " << e.what() << '\n';
    return kUndecided;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kCheckFailed;
  }
}
