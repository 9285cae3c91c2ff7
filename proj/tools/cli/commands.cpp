#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/fixtures.hpp"
#include "cli/output.hpp"
#include "surftex/error.hpp"
#include "surftex/mill/field.hpp"
#include "surftex/spectral.hpp"

namespace surftex::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::filesystem::path& require_output(const RunConfig& cfg) {
  if (!cfg.output) fail(ErrorCode::config, "missing output path (--out or 'out')");
  return *cfg.output;
}

const std::filesystem::path& require_input(const RunConfig& cfg) {
  if (!cfg.input) fail(ErrorCode::config, "missing input path (--input or 'input')");
  return *cfg.input;
}

HeightField load(const std::filesystem::path& p) {
  if (p.extension() == ".hfld") return read_hfld(p);
  return read_ascii_matrix(p);
}

void print_stats(std::ostream& log, const HeightField& f) {
  const auto s = stats(f);
  log << "size " << f.width() << "x" << f.height() << " @ " << f.spacing_um() << " um\n"
      << "mean " << s.mean << " um, std " << std::sqrt(s.variance) << " um, min " << s.min
      << ", max " << s.max << "\n";
}

std::filesystem::path with_suffix(const std::filesystem::path& p, const char* suffix) {
  auto out = p;
  out += suffix;
  return out;
}

}  // namespace

int cmd_sandblast(const RunConfig& cfg, std::ostream& log) {
  const auto& out_path = require_output(cfg);
  const auto input = load(require_input(cfg));
  SandblastConfig sb = cfg.sandblast;
  sb.seed = cfg.seed;
  sb.threads = resolved_threads(cfg);
  if (!cfg.sandblast_spacing_set) sb.target_spacing_um = input.spacing_um();
  if (!cfg.sandblast_size_set) {
    const double factor = sb.target_spacing_um / input.spacing_um();
    sb.target_width = factor <= 1.0 ? input.width() : downsampled_extent(input.width(), factor);
    sb.target_height = factor <= 1.0 ? input.height() : downsampled_extent(input.height(), factor);
  }

  const auto t0 = Clock::now();
  const auto result = synthesize_sandblast_detailed(input, sb);
  log << "branch " << to_string(result.branch) << " (down-sampled input "
      << result.downsampled_width << "x" << result.downsampled_height << ")\n";
  if (result.plan)
    log << "stitch " << result.plan->patches_per_axis << "x" << result.plan->patches_per_axis
        << " patches of " << result.plan->patch_size << " px, overlap " << result.plan->overlap
        << "\n";
  log << "time " << seconds_since(t0) << " s\n";
  print_stats(log, result.field);

  OutputSet outputs;
  outputs.stage(out_path, [&](const auto& p) { write_hfld(result.field, p); });
  outputs.commit();
  return 0;
}

int cmd_mill(const RunConfig& cfg, std::ostream& log) {
  const auto& out_path = require_output(cfg);
  auto mc = cfg.mill.cfg;
  mc.seed = cfg.seed;
  mc.validate();
  const auto view = cfg.mill.viewport();

  std::optional<double> mean = cfg.mill.target_mean_um;
  std::optional<double> var;
  if (cfg.mill.target_std_um) var = *cfg.mill.target_std_um * *cfg.mill.target_std_um;
  if (cfg.input) {
    const auto measured = stats(load(*cfg.input));
    if (!mean) mean = measured.mean;
    if (!var) var = measured.variance;
  }
  if (mean.has_value() != var.has_value())
    fail(ErrorCode::config, "height adaptation needs both a target mean and a target std");

  const auto t0 = Clock::now();
  auto result = mill::render(mc, view, {cfg.mill.tile_px, resolved_threads(cfg)});
  const double elapsed = seconds_since(t0);
  HeightField field = mean ? mill::adapt_height(result.field, *mean, *var) : result.field;
  log << "rings " << result.rings_generated << " (visible " << result.rings_visible << ")\n"
      << "time " << elapsed << " s\n";
  print_stats(log, field);

  OutputSet outputs;
  outputs.stage(out_path, [&](const auto& p) { write_hfld(field, p); });
  outputs.commit();
  return 0;
}

int cmd_stats(const RunConfig& cfg, std::ostream& log) {
  const auto& in_path = require_input(cfg);
  const auto field = load(in_path);
  const auto prefix = cfg.output ? *cfg.output : in_path;
  if (cfg.stats.bins < 1) fail(ErrorCode::config, "key 'stats.bins' must be at least 1");
  print_stats(log, field);

  const auto hist = histogram(field, cfg.stats.bins);
  OutputSet outputs;
  outputs.stage(with_suffix(prefix, ".hist.csv"),
                [&](const auto& p) { write_histogram_csv(hist, p); });
  if (cfg.stats.autocorrelation) {
    const auto acf = autocorrelation(field);
    outputs.stage(with_suffix(prefix, ".acf.hfld"), [&](const auto& p) { write_hfld(acf, p); });
  }
  outputs.commit();
  return 0;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.bench.repetitions < 1)
    fail(ErrorCode::config, "key 'bench.repetitions' must be at least 1");
  auto base = cfg.mill.cfg;
  base.validate();
  const int threads = resolved_threads(cfg);

  std::ostringstream csv;
  csv << "size,alpha,mean_time,min,max,mean_ring_count\n";
  for (int size : cfg.bench.sizes) {
    if (size < 1) fail(ErrorCode::config, "bench sizes must be positive");
    for (double alpha : cfg.bench.alphas) {
      auto mc = base;
      mc.alpha = alpha;
      mc.validate();
      const mill::Viewport view{cfg.mill.x0_mm, cfg.mill.y0_mm, size, size, cfg.mill.spacing_um};
      double sum = 0.0, lo = INFINITY, hi = 0.0, rings = 0.0;
      for (int rep = 0; rep < cfg.bench.repetitions; ++rep) {
        mc.seed = RandomStream(cfg.seed).substream(static_cast<std::uint64_t>(rep)).next_u64();
        const auto t0 = Clock::now();
        const auto r = mill::render(mc, view, {cfg.mill.tile_px, threads});
        const double t = seconds_since(t0);
        sum += t;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
        rings += static_cast<double>(r.rings_visible);
      }
      const double n = cfg.bench.repetitions;
      csv << size << "," << alpha << "," << sum / n << "," << lo << "," << hi << "," << rings / n
          << "\n";
      log << "size " << size << " alpha " << alpha << ": " << sum / n << " s, " << rings / n
          << " rings\n";
    }
  }
  if (cfg.output) {
    OutputSet outputs;
    outputs.stage(*cfg.output, [&](const auto& p) {
      std::ofstream f(p, std::ios::binary);
      f << csv.str();
      if (!f) fail(ErrorCode::io, "cannot write " + p.string());
    });
    outputs.commit();
  } else {
    out << csv.str();
  }
  return 0;
}

int cmd_fixture(const RunConfig& cfg, std::ostream& log) {
  const auto& out_path = require_output(cfg);
  const auto field = fixture_gen(cfg.fixture, cfg.seed);
  print_stats(log, field);
  OutputSet outputs;
  outputs.stage(out_path, [&](const auto& p) { write_hfld(field, p); });
  outputs.commit();
  return 0;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  switch (cfg.mode) {
    case Mode::sandblast: return cmd_sandblast(cfg, log);
    case Mode::mill: return cmd_mill(cfg, log);
    case Mode::stats: return cmd_stats(cfg, log);
    case Mode::bench: return cmd_bench(cfg, out, log);
    case Mode::fixture: return cmd_fixture(cfg, log);
  }
  return 2;
}

}  // namespace surftex::cli
