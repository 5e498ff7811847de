#pragma once
#include <cstdint>
#include <vector>

#include "coliseum/polynomial.hpp"

namespace coliseum {

struct AffineMap {
  double a = 1.0;  // slope, nonzero
  double b = 0.0;
  double operator()(double x) const { return a * x + b; }
  AffineMap inverse() const { return {1.0 / a, -b / a}; }
  AffineMap after(const AffineMap& inner) const { return {a * inner.a, a * inner.b + b}; }
  double fixed_point() const { return b / (1.0 - a); }
};

// Psi(g)(x) = deg(g) x + log|a(g)|
AffineMap psi(const Polynomial& g);

struct AttractorReport {
  double hull_lo = 0.0, hull_hi = 0.0;
  std::vector<double> endpoints;  // depth-level images of the hull endpoints
  bool cantor_verdict = false;    // depth-1 hull images pairwise disjoint
  double sum_inv_deg = 0.0;
};

AttractorReport mpsi_attractor(const std::vector<AffineMap>& maps, int depth);

enum class StaircaseMode { ExactRecursion, MonteCarlo };

struct StaircaseParams {
  int depth = 48;       // recursion depth
  int mc_samples = 0;   // MonteCarlo only
  int mc_n_max = 200;
  uint64_t seed = 1;
};

// T(x) = sum_j probs_j T(maps_j(x)) with T=0 below 0, T=1 above 1; the maps
// must be the two-branch expansions fixing 0 and 1.
double staircase_T(const std::vector<AffineMap>& maps, const std::vector<double>& probs,
                   double x, StaircaseMode mode, const StaircaseParams& params = {});

}  // namespace coliseum
