#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "surftex/error.hpp"

namespace surftex::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, std::string_view value, const char* expected) {
  fail(ErrorCode::config,
       "key '" + key + "': expected " + expected + ", got '" + std::string(value) + "'");
}

double to_double(const std::string& key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    bad_value(key, v, "a finite number");
  return out;
}

long long to_int(const std::string& key, std::string_view v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

int to_int32(const std::string& key, std::string_view v) {
  const long long x = to_int(key, v);
  if (x < -2147483647LL || x > 2147483647LL) bad_value(key, v, "a 32-bit integer");
  return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "an unsigned integer");
  return out;
}

bool to_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  bad_value(key, v, "true or false");
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, std::string_view v, F parse_one) {
  std::vector<T> out;
  while (true) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (item.empty()) bad_value(key, v, "a comma-separated list");
    out.push_back(parse_one(key, item));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

double degrees(double deg) { return deg * std::numbers::pi / 180.0; }

// Wraps enum parsers so their errors name the key.
template <class F>
auto keyed(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    fail(ErrorCode::config, "key '" + key + "': " + e.what());
  }
}

using Setter = std::function<void(const std::string& key, std::string_view value)>;

std::map<std::string, Setter> setters(RunConfig& c) {
  using mill::NormalParam;
  auto& m = c.mill.cfg;
  auto num = [](double& dst) {
    return Setter([&dst](const std::string& k, std::string_view v) { dst = to_double(k, v); });
  };
  auto integer = [](int& dst) {
    return Setter([&dst](const std::string& k, std::string_view v) { dst = to_int32(k, v); });
  };
  auto opt_num = [](std::optional<double>& dst) {
    return Setter([&dst](const std::string& k, std::string_view v) { dst = to_double(k, v); });
  };
  auto opt_int = [](std::optional<int>& dst) {
    return Setter([&dst](const std::string& k, std::string_view v) { dst = to_int32(k, v); });
  };
  auto deg = [](double& dst) {
    return Setter(
        [&dst](const std::string& k, std::string_view v) { dst = degrees(to_double(k, v)); });
  };

  std::map<std::string, Setter> s;
  s["seed"] = [&c](const std::string& k, std::string_view v) { c.seed = to_u64(k, v); };
  s["threads"] = [&c](const std::string& k, std::string_view v) { c.threads = to_int32(k, v); };
  s["input"] = [&c](const std::string&, std::string_view v) { c.input = std::string(v); };
  s["out"] = [&c](const std::string&, std::string_view v) { c.output = std::string(v); };

  s["sandblast.width"] = [&c](const std::string& k, std::string_view v) {
    c.sandblast.target_width = to_int32(k, v);
    c.sandblast_size_set = true;
  };
  s["sandblast.height"] = [&c](const std::string& k, std::string_view v) {
    c.sandblast.target_height = to_int32(k, v);
    c.sandblast_size_set = true;
  };
  s["sandblast.spacing_um"] = [&c](const std::string& k, std::string_view v) {
    c.sandblast.target_spacing_um = to_double(k, v);
    c.sandblast_spacing_set = true;
  };
  s["sandblast.method"] = [&c](const std::string& k, std::string_view v) {
    c.sandblast.method = keyed(k, [&] { return parse_generator(v); });
  };
  s["sandblast.strategy"] = [&c](const std::string& k, std::string_view v) {
    c.sandblast.strategy = keyed(k, [&] { return parse_size_strategy(v); });
  };
  s["sandblast.patch_size"] = integer(c.sandblast.patch_size);
  s["sandblast.overlap"] = integer(c.sandblast.overlap);
  s["sandblast.blend_band"] = integer(c.sandblast.blend_band);

  s["mill.d_mm"] = num(m.d_mm);
  s["mill.alpha"] = num(m.alpha);
  s["mill.a_e"] = [&m](const std::string& k, std::string_view v) {
    m.alpha = keyed(k, [&] { return mill::alpha_from_width_of_cut(to_double(k, v)); });
  };
  s["mill.delta_mm"] = num(m.delta_mm);
  s["mill.shape"] = [&m](const std::string& k, std::string_view v) {
    m.shape = keyed(k, [&] { return mill::parse_shape(v); });
  };
  s["mill.interaction"] = [&m](const std::string& k, std::string_view v) {
    m.interaction = keyed(k, [&] { return mill::parse_interaction(v); });
  };
  auto normal = [&](const std::string& stem, NormalParam& p, const char* unit) {
    s["mill." + stem + "_" + unit] = num(p.mean);
    s["mill." + stem + "_sigma"] = num(p.sigma);
  };
  normal("w_minus", m.w_minus, "mm");
  normal("w_plus_i", m.w_plus_i, "mm");
  normal("w_plus_o", m.w_plus_o, "mm");
  normal("l_plus_i", m.l_plus_i, "um");
  normal("h_plus_i", m.h_plus_i, "um");
  normal("l_plus_o", m.l_plus_o, "um");
  normal("h_plus_o", m.h_plus_o, "um");
  s["mill.tilt_angle_deg"] = deg(m.tilt_angle_rad);
  s["mill.depth_um"] = num(m.depth_um);
  s["mill.l_minus_sigma"] = num(m.sigma_l_minus);
  s["mill.h_minus_sigma"] = num(m.sigma_h_minus);
  s["mill.noise_lambda"] = num(m.noise_lambda);
  s["mill.noise_tau"] = num(m.noise_tau);
  s["mill.a_min"] = num(m.a_min);
  s["mill.a_max"] = num(m.a_max);
  s["mill.b_min"] = num(m.b_min);
  s["mill.b_max"] = num(m.b_max);
  s["mill.sigma_c_xx"] = num(m.sigma_c.xx);
  s["mill.sigma_c_xy"] = num(m.sigma_c.xy);
  s["mill.sigma_c_yy"] = num(m.sigma_c.yy);
  s["mill.epsilon"] = num(m.epsilon);
  s["mill.x0_mm"] = num(c.mill.x0_mm);
  s["mill.y0_mm"] = num(c.mill.y0_mm);
  s["mill.width_mm"] = num(c.mill.width_mm);
  s["mill.height_mm"] = num(c.mill.height_mm);
  s["mill.spacing_um"] = num(c.mill.spacing_um);
  s["mill.width_px"] = opt_int(c.mill.width_px);
  s["mill.height_px"] = opt_int(c.mill.height_px);
  s["mill.tile_px"] = integer(c.mill.tile_px);
  s["mill.target_mean_um"] = opt_num(c.mill.target_mean_um);
  s["mill.target_std_um"] = opt_num(c.mill.target_std_um);
  // Path keys are applied after the path kind is known; see parse_config_text.

  s["stats.bins"] = integer(c.stats.bins);
  s["stats.autocorrelation"] = [&c](const std::string& k, std::string_view v) {
    c.stats.autocorrelation = to_bool(k, v);
  };

  s["bench.sizes"] = [&c](const std::string& k, std::string_view v) {
    c.bench.sizes = to_list<int>(k, v, to_int32);
  };
  s["bench.alphas"] = [&c](const std::string& k, std::string_view v) {
    c.bench.alphas = to_list<double>(k, v, to_double);
  };
  s["bench.repetitions"] = integer(c.bench.repetitions);

  s["fixture.kind"] = [&c](const std::string& k, std::string_view v) {
    if (v == "sandblasted") c.fixture.kind = FixtureKind::sandblasted;
    else if (v == "milled") c.fixture.kind = FixtureKind::milled;
    else bad_value(k, v, "sandblasted or milled");
  };
  s["fixture.width"] = integer(c.fixture.width);
  s["fixture.height"] = integer(c.fixture.height);
  s["fixture.spacing_um"] = num(c.fixture.spacing_um);
  s["fixture.mean_um"] = num(c.fixture.mean_um);
  s["fixture.std_um"] = num(c.fixture.std_um);
  s["fixture.smoothing_px"] = num(c.fixture.smoothing_px);
  return s;
}

const std::set<std::string> kPathKeys = {
    "mill.path",        "mill.beta_deg",           "mill.ordering",
    "mill.spiral_origin_x_mm", "mill.spiral_origin_y_mm", "mill.spiral_orientation",
    "mill.spiral_direction"};

void apply_path(RunConfig& c, const std::map<std::string, std::string>& kv) {
  const auto get = [&kv](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  std::string kind = "parallel";
  if (const auto* v = get("mill.path")) kind = *v;
  double beta = 0.0;
  if (const auto* v = get("mill.beta_deg")) beta = degrees(to_double("mill.beta_deg", *v));
  if (kind == "parallel") {
    mill::ParallelPath p;
    p.beta = beta;
    if (const auto* v = get("mill.ordering"))
      p.ordering = keyed("mill.ordering", [&] { return mill::parse_line_order(*v); });
    for (const char* key : {"mill.spiral_origin_x_mm", "mill.spiral_origin_y_mm",
                            "mill.spiral_orientation", "mill.spiral_direction"})
      if (get(key))
        fail(ErrorCode::config, "key '" + std::string(key) + "' needs mill.path = spiral");
    c.mill.cfg.path = p;
  } else if (kind == "spiral") {
    mill::SpiralPath p;
    p.beta = beta;
    if (const auto* v = get("mill.spiral_origin_x_mm"))
      p.origin_x_mm = to_double("mill.spiral_origin_x_mm", *v);
    if (const auto* v = get("mill.spiral_origin_y_mm"))
      p.origin_y_mm = to_double("mill.spiral_origin_y_mm", *v);
    if (const auto* v = get("mill.spiral_orientation"))
      p.orientation = to_int32("mill.spiral_orientation", *v);
    if (const auto* v = get("mill.spiral_direction"))
      p.direction = keyed("mill.spiral_direction", [&] { return mill::parse_spiral_direction(*v); });
    if (get("mill.ordering"))
      fail(ErrorCode::config, "key 'mill.ordering' needs mill.path = parallel");
    c.mill.cfg.path = p;
  } else {
    bad_value("mill.path", kind, "parallel or spiral");
  }
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::sandblast: return "sandblast";
    case Mode::mill: return "mill";
    case Mode::stats: return "stats";
    case Mode::bench: return "bench";
    case Mode::fixture: return "fixture";
  }
  return "?";
}

mill::Viewport MillRun::viewport() const {
  auto v = mill::Viewport::from_extent(x0_mm, y0_mm, width_mm, height_mm, spacing_um);
  if (width_px) v.width_px = *width_px;
  if (height_px) v.height_px = *height_px;
  v.validate();
  return v;
}

RunConfig parse_config_text(std::string_view text, Mode mode, std::string_view source) {
  RunConfig c;
  c.mode = mode;
  const auto table = setters(c);
  std::map<std::string, std::string> seen;

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = std::string(source) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::config, where + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorCode::config, where + ": missing key");
    if (!table.contains(key) && !kPathKeys.contains(key))
      fail(ErrorCode::config, where + ": unknown key '" + key + "'");
    if (seen.contains(key)) fail(ErrorCode::config, where + ": duplicate key '" + key + "'");
    if (value.empty()) fail(ErrorCode::config, where + ": key '" + key + "' has no value");
    seen.emplace(key, std::string(value));
    if (const auto it = table.find(key); it != table.end()) it->second(key, value);
  }

  if (seen.contains("mill.alpha") && seen.contains("mill.a_e"))
    fail(ErrorCode::config, "keys 'mill.alpha' and 'mill.a_e' are mutually exclusive");
  apply_path(c, seen);

  if (mode == Mode::mill) {
    for (const char* key : {"mill.d_mm", "mill.delta_mm", "mill.path"})
      if (!seen.contains(key))
        fail(ErrorCode::config, "missing required key '" + std::string(key) + "'");
    if (!seen.contains("mill.alpha") && !seen.contains("mill.a_e"))
      fail(ErrorCode::config, "missing required key 'mill.alpha' (or 'mill.a_e')");
  }
  c.sandblast.seed = c.seed;
  c.mill.cfg.seed = c.seed;
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path, Mode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), mode, path.string());
}

std::pair<int, int> parse_size(std::string_view text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) bad_value("--size", text, "WxH");
  const int w = to_int32("--size", trim(text.substr(0, x)));
  const int h = to_int32("--size", trim(text.substr(x + 1)));
  if (w < 1 || h < 1) bad_value("--size", text, "positive WxH");
  return {w, h};
}

void apply_overrides(RunConfig& c, const Overrides& f) {
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.output = *f.out;
  if (f.input) c.input = *f.input;
  if (f.threads) c.threads = *f.threads;
  if (f.size) {
    c.sandblast.target_width = f.size->first;
    c.sandblast.target_height = f.size->second;
    c.sandblast_size_set = true;
    c.mill.width_px = f.size->first;
    c.mill.height_px = f.size->second;
    c.fixture.width = f.size->first;
    c.fixture.height = f.size->second;
    c.bench.sizes = {f.size->first};
  }
  if (f.spacing_um) {
    c.sandblast.target_spacing_um = *f.spacing_um;
    c.sandblast_spacing_set = true;
    c.mill.spacing_um = *f.spacing_um;
    c.fixture.spacing_um = *f.spacing_um;
  }
  c.sandblast.seed = c.seed;
  c.mill.cfg.seed = c.seed;
}

int resolved_threads(const RunConfig& c) {
  int n = 1;
  if (c.threads) {
    n = *c.threads;
  } else if (const char* env = std::getenv("SURFTEX_THREADS"); env && *env) {
    n = to_int32("SURFTEX_THREADS", trim(env));
  }
  if (n < 1) fail(ErrorCode::config, "thread count must be at least 1, got " + std::to_string(n));
  return n;
}

}  // namespace surftex::cli
