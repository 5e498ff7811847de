#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coliseum/polynomial.hpp"

namespace coliseum {

struct GridSpec {
  double re_min = -2.0, re_max = 2.0, im_min = -2.0, im_max = 2.0;
  int width = 256, height = 256;

  double dx() const { return (re_max - re_min) / width; }
  double dy() const { return (im_max - im_min) / height; }

  // Row-major, row 0 at im_max (image convention).
  cplx center(int px, int py) const {
    return {re_min + (px + 0.5) * dx(), im_max - (py + 0.5) * dy()};
  }
  cplx center(size_t idx) const {
    return center(static_cast<int>(idx) % width, static_cast<int>(idx) / width);
  }
  size_t size() const { return static_cast<size_t>(width) * height; }

  std::optional<size_t> pixel_of(cplx z) const {
    int px = static_cast<int>((z.real() - re_min) / dx());
    int py = static_cast<int>((im_max - z.imag()) / dy());
    if (px < 0 || px >= width || py < 0 || py >= height) return std::nullopt;
    return static_cast<size_t>(py) * width + px;
  }

  bool operator==(const GridSpec&) const = default;
};

struct RegionMask {
  GridSpec grid;
  std::vector<uint8_t> bits;

  RegionMask() = default;
  explicit RegionMask(const GridSpec& g) : grid(g), bits(g.size(), 0) {}

  bool at(size_t i) const { return bits[i] != 0; }
  bool contains(cplx z) const {
    auto i = grid.pixel_of(z);
    return i && bits[*i] != 0;
  }
  size_t count() const;
};

RegionMask dilate(const RegionMask& m, int px = 1);  // chebyshev radius px
RegionMask erode(const RegionMask& m, int px = 1);
RegionMask mask_and(const RegionMask& a, const RegionMask& b);
RegionMask mask_or(const RegionMask& a, const RegionMask& b);
RegionMask mask_minus(const RegionMask& a, const RegionMask& b);
size_t intersection_count(const RegionMask& a, const RegionMask& b);
bool subset_of(const RegionMask& a, const RegionMask& b);

// Pixels of m with a 4-neighbor outside m (or on the grid edge).
std::vector<size_t> boundary_pixels(const RegionMask& m);

// Complement pixels 4-connected to the grid border.
RegionMask unbounded_complement(const RegionMask& m);

bool is_connected8(const RegionMask& m);

struct FieldMeta {
  uint64_t seed = 0;
  int samples = 0;
  int n_max = 0;
  uint64_t system_hash = 0;
};

struct ScalarField {
  GridSpec grid;
  std::vector<double> values;
  std::vector<double> undecided;
  FieldMeta meta;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g)
      : grid(g), values(g.size(), 0.0), undecided(g.size(), 0.0) {}

  double at(size_t i) const { return values[i]; }
  // Bilinear interpolation of values; fallback outside the rect.
  double interp(cplx z, double outside) const;
};

void write_pgm16(const std::string& path, const GridSpec& g,
                 const std::vector<double>& v, double lo = 0.0, double hi = 1.0);
void write_pgm_mask(const std::string& path, const RegionMask& m);
RegionMask read_pgm_mask(const std::string& path, const GridSpec& grid);
void write_field_csv(const std::string& path, const ScalarField& f);

}  // namespace coliseum
