#pragma once
#include <vector>

#include "coliseum/field_engine.hpp"
#include "coliseum/grid.hpp"
#include "coliseum/system.hpp"
#include "coliseum/word.hpp"

namespace coliseum {

struct ExponentResult {
  double value = 0.0;
  double sum_inv_deg = 0.0;
  bool disjointness_regime = false;  // sum 1/deg < 1
};

// u = -(sum p log p) / (sum p log deg)
ExponentResult u_exponent(const std::vector<int>& degs, const std::vector<double>& p);
// (sum p log deg - sum p log p) / (sum p log deg) = 1 + u
ExponentResult dim_lower_bound(const std::vector<int>& degs,
                               const std::vector<double>& p);

// Fixed point of T(w) = [w1==2] p1 + p_{w1} T(shift w); two-letter alphabet only.
double t_value_of_word(double p1, double p2, const Word& w);

// Greedy digit extraction; an exact gap hit yields the two-word pair.
std::vector<Word> invert_t(double p1, double p2, double t, int depth);

struct ComponentDescriptor {
  Word word;
  double t_value = 0.0;
  std::vector<cplx> cloud;
};

ComponentDescriptor component_of_word(const GeneratorSystem& sys, const Word& w,
                                      int iters, uint64_t rng_seed,
                                      int degree_cap = 4096);

enum class Surround { ALess, BLess, Equal, Incomparable };
const char* to_string(Surround s);

Surround surrounding_compare(const RegionMask& a, const RegionMask& b);

struct HolderEstimate {
  double exponent = 0.0;
  double fit_quality = 0.0;  // regression R^2
  std::vector<double> radii;
  cplx z0;
  bool reliable = false;
};

HolderEstimate empirical_holder(const ScalarField& T, cplx z0,
                                const std::vector<double>& radii);
std::vector<double> dyadic_radii(const GridSpec& grid, int from_px = 32, int count = 6);

std::vector<cplx> sample_lambda_typical(const GeneratorSystem& sys, int n_points,
                                        int word_len, uint64_t rng_seed);

struct TrichotomyResult {
  int which_case = 0;  // 1, 2, or 3
  std::vector<int> order;  // generator indices sorted innermost-first
  std::vector<size_t> pair_overlap_pixels;  // (1,2),(1,3),(2,3) after dilation
};

TrichotomyResult classify_3gen(const GeneratorSystem& sys, const RegionMask& annulus,
                               const GridSpec& grid, int julia_n_max = 200);

struct KernelProbeResult {
  double fraction = 0.0;
  int witnessed = 0;
  int total = 0;
};

KernelProbeResult kernel_julia_probe(const GeneratorSystem& sys,
                                     const std::vector<cplx>& julia_points, int depth);

// Reorders a 2-generator system (with its weights) so that
// J(h_1) <_s J(h_2); no-op when already oriented or m != 2.
GeneratorSystem canonicalize_two_gen(const GeneratorSystem& sys, const GridSpec& grid,
                                     int julia_n_max = 200);

struct AnnulusStat {
  double mean = 0.0;
  double stderr_mean = 0.0;
  size_t pixels = 0;
};

struct MonotonicityReport {
  std::vector<AnnulusStat> stats;
  bool strictly_increasing = false;
};

// Throws OrderViolation when the masks are not nested innermost-first or the
// means fail to increase beyond 3 sigma.
MonotonicityReport monotonicity_audit(const GeneratorSystem& sys, const ScalarField& T,
                                      const std::vector<RegionMask>& annuli);

}  // namespace coliseum
