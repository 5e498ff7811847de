#pragma once
#include <optional>
#include <vector>

#include "coliseum/grid.hpp"
#include "coliseum/polynomial.hpp"

namespace coliseum {

struct Disk {
  cplx center;
  double radius = 0.0;
  bool contains(cplx z) const { return std::abs(z - center) <= radius; }
};

struct GeneratorSystem {
  std::vector<Polynomial> generators;
  std::vector<double> weights;
  double escape_radius = 0.0;
  std::optional<Disk> trap_disk;
  std::optional<RegionMask> trap_mask;

  int m() const { return static_cast<int>(generators.size()); }
  bool has_trap() const { return trap_disk.has_value() || trap_mask.has_value(); }
  bool in_trap(cplx z) const {
    if (trap_disk && trap_disk->contains(z)) return true;
    if (trap_mask && trap_mask->contains(z)) return true;
    return false;
  }
  // Generator index for a uniform draw u in [0,1) (inverse CDF).
  int pick(double u) const {
    double acc = 0.0;
    for (int j = 0; j + 1 < m(); ++j) {
      acc += weights[j];
      if (u < acc) return j;
    }
    return m() - 1;
  }
  uint64_t hash() const;
};

// Throws WeightError / DegreeError / DuplicateGenerator.
GeneratorSystem build_system(std::vector<Polynomial> polys, std::vector<double> weights);

struct TrapCertificate {
  bool ok = false;
  double margin = 0.0;  // pixels for mask candidates, absolute for disks
  int samples = 0;
  cplx worst_sample;  // violating boundary point when !ok
  int worst_generator = -1;
};

// Mask candidate: boundary pixel centers must map into dilate(mask, 1) under
// every generator; margin is the worst chebyshev pixel distance to its
// complement. Disk candidate: boundary samples map inside with clearance.
TrapCertificate certify_trap(const GeneratorSystem& sys, const RegionMask& candidate);
TrapCertificate certify_trap(const GeneratorSystem& sys, const Disk& candidate, int samples);

// Word-tree search: Escaped if any word escapes, Trapped if every branch
// reaches the trap by `depth`, Undecided otherwise.
OrbitVerdict khat_membership(const GeneratorSystem& sys, cplx z, int depth = 24,
                             long long n_budget = 1000000);

enum class BoundedVerdict { Bounded, Unbounded, Undecided };
const char* to_string(BoundedVerdict v);

struct PostcriticalReport {
  std::vector<cplx> points;
  BoundedVerdict verdict = BoundedVerdict::Undecided;
};

PostcriticalReport postcritical_sample(const GeneratorSystem& sys, int depth,
                                       long long budget);

enum class DisjointVerdict { Disjoint, Overlapping, Inconclusive };
const char* to_string(DisjointVerdict v);

struct DisjointReport {
  DisjointVerdict verdict = DisjointVerdict::Inconclusive;
  std::vector<RegionMask> preimages;
  size_t overlap_pixels = 0;
  size_t annulus_pixels = 0;
  bool union_inside = false;
};

DisjointReport preimage_disjointness(const GeneratorSystem& sys,
                                     const RegionMask& annulus, const GridSpec& grid);

// Raster filled-Julia estimate of a single map (Undecided pixels at n_max).
RegionMask filled_julia_mask(const Polynomial& g, const GridSpec& grid, int n_max,
                             double R);
// Boundary band of the filled-Julia mask (raster J(g) estimate).
RegionMask julia_mask(const Polynomial& g, const GridSpec& grid, int n_max, double R);

RegionMask disk_mask(const GridSpec& grid, const Disk& d);

}  // namespace coliseum
