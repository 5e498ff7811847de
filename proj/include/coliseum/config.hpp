#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coliseum/grid.hpp"
#include "coliseum/system.hpp"

namespace coliseum {

// Minimal TOML subset: [section], key = scalar | array of scalars.
struct TomlValue {
  std::vector<std::string> items;  // scalars hold exactly one item
  bool is_array = false;

  const std::string& scalar() const;
  double as_double() const;
  long long as_int() const;
  bool as_bool() const;
  std::vector<double> as_doubles() const;
  std::vector<std::string> as_strings() const;
};

struct TomlTable {
  std::map<std::string, TomlValue> kv;  // keys as "section.key"

  bool has(const std::string& key) const { return kv.count(key) > 0; }
  const TomlValue& at(const std::string& key) const;
  static TomlTable parse_file(const std::string& path);
  static TomlTable parse_string(const std::string& text);
  void set(const std::string& dotted, const std::string& value);  // CLI override
};

struct RunConfig {
  std::vector<std::string> poly_texts;
  std::vector<double> weights;
  GridSpec grid;
  int samples = 500;
  int n_max = 300;
  uint64_t seed = 1;
  // trap: disk, mask file, or auto (certified filled-julia mask of generator 0)
  std::optional<Disk> trap_disk;
  std::string trap_mask_path;
  bool trap_auto = false;
  int trap_n_max = 300;
  std::string output_dir = ".";
  std::vector<double> t_values;
  int holder_points = 50;
  int cloud_iters = 2000;

  uint64_t hash() const;
};

RunConfig load_config(const TomlTable& t);

// Builds the system and attaches the configured trap (certifying it).
GeneratorSystem make_system(const RunConfig& cfg);

}  // namespace coliseum
