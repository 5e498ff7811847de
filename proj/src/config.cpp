#include "coliseum/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "coliseum/errors.hpp"
#include "coliseum/rng.hpp"

namespace coliseum {

const std::string& TomlValue::scalar() const {
  if (is_array || items.size() != 1) throw ConfigError("expected scalar value");
  return items[0];
}
double TomlValue::as_double() const {
  try {
    return std::stod(scalar());
  } catch (const std::exception&) {
    throw ConfigError("expected number, got '" + scalar() + "'");
  }
}
long long TomlValue::as_int() const {
  try {
    return std::stoll(scalar());
  } catch (const std::exception&) {
    throw ConfigError("expected integer, got '" + scalar() + "'");
  }
}
bool TomlValue::as_bool() const {
  const std::string& s = scalar();
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("expected bool, got '" + s + "'");
}
std::vector<double> TomlValue::as_doubles() const {
  std::vector<double> out;
  for (const auto& s : items) {
    try {
      out.push_back(std::stod(s));
    } catch (const std::exception&) {
      throw ConfigError("expected number array item, got '" + s + "'");
    }
  }
  return out;
}
std::vector<std::string> TomlValue::as_strings() const { return items; }

const TomlValue& TomlTable::at(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string unquote(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

TomlValue parse_value(const std::string& raw) {
  TomlValue v;
  std::string s = trim(raw);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ConfigError("unterminated array: " + s);
    v.is_array = true;
    std::string body = s.substr(1, s.size() - 2);
    std::string item;
    int quote = 0;
    for (char ch : body) {
      if (ch == '"' || ch == '\'') quote ^= 1;
      if (ch == ',' && !quote) {
        if (!trim(item).empty()) v.items.push_back(unquote(item));
        item.clear();
      } else {
        item += ch;
      }
    }
    if (!trim(item).empty()) v.items.push_back(unquote(item));
  } else {
    v.items.push_back(unquote(s));
  }
  return v;
}

}  // namespace

TomlTable TomlTable::parse_string(const std::string& text) {
  TomlTable t;
  std::istringstream in(text);
  std::string line, section;
  while (std::getline(in, line)) {
    // strip comments outside quotes
    int quote = 0;
    for (size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '"' || line[k] == '\'') quote ^= 1;
      if (line[k] == '#' && !quote) {
        line.resize(k);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("bad config line: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string full = section.empty() ? key : section + "." + key;
    t.kv[full] = parse_value(line.substr(eq + 1));
  }
  return t;
}

TomlTable TomlTable::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_string(ss.str());
}

void TomlTable::set(const std::string& dotted, const std::string& value) {
  kv[dotted] = parse_value(value);
}

RunConfig load_config(const TomlTable& t) {
  RunConfig cfg;
  if (!t.has("system.polys")) throw ConfigError("missing config key 'system.polys'");
  cfg.poly_texts = t.at("system.polys").as_strings();
  if (!t.has("system.weights")) throw ConfigError("missing config key 'system.weights'");
  cfg.weights = t.at("system.weights").as_doubles();
  if (t.has("grid.rect")) {
    auto r = t.at("grid.rect").as_doubles();
    if (r.size() != 4) throw ConfigError("grid.rect needs 4 numbers");
    cfg.grid.re_min = r[0];
    cfg.grid.re_max = r[1];
    cfg.grid.im_min = r[2];
    cfg.grid.im_max = r[3];
  }
  if (t.has("grid.width")) cfg.grid.width = static_cast<int>(t.at("grid.width").as_int());
  if (t.has("grid.height"))
    cfg.grid.height = static_cast<int>(t.at("grid.height").as_int());
  if (cfg.grid.width < 2 || cfg.grid.height < 2 || cfg.grid.re_min >= cfg.grid.re_max ||
      cfg.grid.im_min >= cfg.grid.im_max)
    throw ConfigError("invalid grid");
  if (t.has("sampling.N")) cfg.samples = static_cast<int>(t.at("sampling.N").as_int());
  if (t.has("sampling.n_max")) cfg.n_max = static_cast<int>(t.at("sampling.n_max").as_int());
  if (t.has("sampling.seed"))
    cfg.seed = static_cast<uint64_t>(t.at("sampling.seed").as_int());
  if (t.has("trap.center")) {
    auto c = t.at("trap.center").as_doubles();
    if (c.size() != 2 || !t.has("trap.radius"))
      throw ConfigError("trap disk needs center = [re, im] and radius");
    cfg.trap_disk = Disk{cplx(c[0], c[1]), t.at("trap.radius").as_double()};
  }
  if (t.has("trap.mask")) cfg.trap_mask_path = t.at("trap.mask").scalar();
  if (t.has("trap.auto")) cfg.trap_auto = t.at("trap.auto").as_bool();
  if (t.has("trap.n_max")) cfg.trap_n_max = static_cast<int>(t.at("trap.n_max").as_int());
  if (t.has("output.dir")) cfg.output_dir = t.at("output.dir").scalar();
  if (t.has("analysis.t_values")) cfg.t_values = t.at("analysis.t_values").as_doubles();
  if (t.has("analysis.holder_points"))
    cfg.holder_points = static_cast<int>(t.at("analysis.holder_points").as_int());
  if (t.has("analysis.cloud_iters"))
    cfg.cloud_iters = static_cast<int>(t.at("analysis.cloud_iters").as_int());
  return cfg;
}

uint64_t RunConfig::hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_str = [&](const std::string& s) { h = fnv1a(s.data(), s.size(), h); };
  auto mix = [&](double v) { h = fnv1a(&v, sizeof v, h); };
  for (const auto& p : poly_texts) mix_str(p);
  for (double w : weights) mix(w);
  mix(grid.re_min);
  mix(grid.re_max);
  mix(grid.im_min);
  mix(grid.im_max);
  mix(grid.width);
  mix(grid.height);
  mix(static_cast<double>(samples));
  mix(static_cast<double>(n_max));
  h = fnv1a(&seed, sizeof seed, h);
  if (trap_disk) {
    mix(trap_disk->center.real());
    mix(trap_disk->center.imag());
    mix(trap_disk->radius);
  }
  mix_str(trap_mask_path);
  mix(trap_auto ? 1.0 : 0.0);
  return h;
}

GeneratorSystem make_system(const RunConfig& cfg) {
  std::vector<Polynomial> polys;
  for (const auto& s : cfg.poly_texts) polys.push_back(Polynomial::parse(s));
  GeneratorSystem sys = build_system(std::move(polys), cfg.weights);
  if (cfg.trap_disk) {
    auto cert = certify_trap(sys, *cfg.trap_disk, 4096);
    if (!cert.ok) throw ConfigError("trap disk failed certification");
    sys.trap_disk = cfg.trap_disk;
  } else if (!cfg.trap_mask_path.empty()) {
    RegionMask m = read_pgm_mask(cfg.trap_mask_path, cfg.grid);
    auto cert = certify_trap(sys, m);
    if (!cert.ok) throw ConfigError("trap mask failed certification");
    sys.trap_mask = std::move(m);
  } else if (cfg.trap_auto) {
    // certified filled-julia mask of the first generator
    const Polynomial& g0 = sys.generators[0];
    double R0 = escape_radius({g0});
    GridSpec tg = cfg.grid;
    auto cert_try = [&](const GridSpec& g) {
      RegionMask m = filled_julia_mask(g0, g, cfg.trap_n_max, R0);
      auto cert = certify_trap(sys, m);
      return std::pair{cert.ok, std::move(m)};
    };
    auto [ok, mask] = cert_try(tg);
    if (!ok) throw ConfigError("auto trap (K of generator 1) failed certification");
    sys.trap_mask = std::move(mask);
  }
  return sys;
}

}  // namespace coliseum
