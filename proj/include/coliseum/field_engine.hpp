#pragma once
#include <cstdint>
#include <vector>

#include "coliseum/grid.hpp"
#include "coliseum/system.hpp"

namespace coliseum {

struct SampleCounts {
  int escaped = 0;
  int trapped = 0;
  int undecided = 0;
};

// N i.i.d. random orbits from z; streams derived from (seed, key, sample).
SampleCounts estimate_T_point(const GeneratorSystem& sys, cplx z, int N, int n_max,
                              uint64_t seed, uint64_t key = 0);

ScalarField render_T(const GeneratorSystem& sys, const GridSpec& grid, int N,
                     int n_max, uint64_t seed);
ScalarField render_T_serial(const GeneratorSystem& sys, const GridSpec& grid, int N,
                            int n_max, uint64_t seed);

// Fraction of orbits that enter `target` and stay for 10 consecutive steps.
// Shares the per-(pixel,sample) streams with render_T, so per pixel
// T + T_target + undecided == 1 exactly.
ScalarField render_T_target(const GeneratorSystem& sys, const GridSpec& grid,
                            const Disk& target, int N, int n_max, uint64_t seed);

// (M_tau phi)(z) = sum_j p_j phi(h_j(z)), phi interpolated bilinearly.
ScalarField operator_apply(const GeneratorSystem& sys, const ScalarField& field,
                           double boundary_value);

struct OperatorLimitReport {
  std::vector<double> sup_errors;  // one per iterate
  double final_error = 0.0;
  bool eventually_decreasing = false;
};

OperatorLimitReport operator_limit_check(const GeneratorSystem& sys,
                                         const ScalarField& phi, double phi_inf,
                                         const ScalarField& T, cplx mu_point,
                                         int steps, double boundary_value);

// Non-constancy locus of the T estimate: neighborhood max-min beyond MC noise.
RegionMask classify_julia(const GeneratorSystem& sys, const ScalarField& T,
                          int window);

// Chaos game on the backward dynamics; burn-in 100 points dropped.
std::vector<cplx> julia_backward_cloud(const GeneratorSystem& sys, cplx seed_point,
                                       int iters, uint64_t rng_seed);

// value(y) = log+ |gamma_{n,1}(y)| / deg(gamma_{n,1}); letters are 0-based
// generator indices consumed in application order.
ScalarField green_field(const GeneratorSystem& sys, const std::vector<int>& letters,
                        const GridSpec& grid);
double green_value(const GeneratorSystem& sys, const std::vector<int>& letters,
                   cplx y);

}  // namespace coliseum
