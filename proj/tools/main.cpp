#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "surftex/error.hpp"

int main(int argc, char** argv) {
  using namespace surftex::cli;
  CLI::App app{"surftex: synthetic height fields of machined metal surfaces"};
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    Overrides overrides;
    std::string size;
  } flags;

  const std::pair<Mode, const char*> modes[] = {
      {Mode::sandblast, "synthesize a sandblasted texture from a measurement"},
      {Mode::mill, "render a milled surface from the procedural ring model"},
      {Mode::stats, "write histogram and autocorrelation of a height field"},
      {Mode::bench, "time mill renders over sizes and overlaps (CSV)"},
      {Mode::fixture, "generate a synthetic pseudo-measurement"}};
  std::vector<std::pair<Mode, CLI::App*>> subs;
  for (const auto& [mode, help] : modes) {
    auto* sub = app.add_subcommand(std::string(to_string(mode)), help);
    sub->add_option("--config", flags.config, "key = value configuration file");
    sub->add_option("--seed", flags.overrides.seed, "random seed");
    sub->add_option("--out", flags.overrides.out, "output path (prefix for stats)");
    sub->add_option("--input", flags.overrides.input, "input height field (.hfld or ASCII)");
    sub->add_option("--threads", flags.overrides.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--size", flags.size, "output size WxH in pixels");
    sub->add_option("--spacing-um", flags.overrides.spacing_um, "output pixel spacing");
    subs.emplace_back(mode, sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    Mode mode = Mode::stats;
    for (const auto& [m, sub] : subs)
      if (sub->parsed()) mode = m;
    if (!flags.size.empty()) flags.overrides.size = parse_size(flags.size);
    RunConfig cfg = flags.config.empty() ? parse_config_text("", mode, "defaults")
                                         : parse_config_file(flags.config, mode);
    apply_overrides(cfg, flags.overrides);
    return run(cfg, std::cout, std::cerr);
  } catch (const surftex::Error& e) {
    std::cerr << "surftex: " << e.what() << "\n";
    return e.code() == surftex::ErrorCode::config ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "surftex: " << e.what() << "\n";
    return 1;
  }
}
