#include <CLI11.hpp>
#include <iostream>

#include "algd/cli.hpp"
#include "algd/lemmas.hpp"

int main(int argc, char** argv) {
  CLI::App app{"algd: exact checks for Courant and vertex algebroids and their characteristic cocycles"};
  app.set_version_flag("--version", std::string(algd::kToolVersion));
  app.require_subcommand(1);

  algd::RunFlags flags;
  std::string manifest;
  std::uint64_t seed = 0;
  int degree = 0, samples = 0;
  bool no_cache = false;

  CLI::App* run = app.add_subcommand("run", "run the tasks of a manifest");
  run->add_option("manifest", manifest, "manifest file")->required();
  auto* seed_opt = run->add_option("--seed", seed, "random seed (overrides the manifest)");
  auto* degree_opt = run->add_option("--degree-bound", degree, "coefficient degree bound for coboundary_solve");
  auto* samples_opt = run->add_option("--samples", samples, "random samples per check");
  run->add_flag("--parallel", flags.parallel, "check charts and samples on worker threads");
  run->add_option("--cache-dir", flags.cache_dir, "cache directory (default $ALGD_CACHE_DIR, then .algd-cache)");
  run->add_flag("--no-cache", no_cache, "neither read nor write the cache");
  run->add_option("--out", flags.out, "write the machine report here");
  run->add_option("--format", flags.format, "stdout format")->check(CLI::IsMember({"text", "machine"}));
  run->add_option("--mutate", flags.mutation, "run verify-lemmas against a deliberately broken variant")
      ->check(CLI::IsMember(algd::mutation_names()));

  CLI::App* list = app.add_subcommand("lemmas", "list lemma and mutation names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& n : algd::lemma_names()) std::cout << n << "\n";
    std::cout << "\nmutations:\n";
    for (const auto& n : algd::mutation_names()) std::cout << n << "\n";
    return 0;
  }

  if (*seed_opt) flags.seed = seed;
  if (*degree_opt) flags.degree_bound = degree;
  if (*samples_opt) flags.samples = samples;
  flags.use_cache = !no_cache;

  algd::RunOutcome o = algd::run_manifest_file(manifest, flags);
  if (o.exit_code == 2) {
    std::cerr << o.error << "\n";
    return 2;
  }
  std::cout << (flags.format == "machine" ? o.machine : o.text);
  return o.exit_code;
}
