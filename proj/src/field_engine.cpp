#include "coliseum/field_engine.hpp"

#include <algorithm>
#include <cmath>

#include "coliseum/errors.hpp"
#include "coliseum/rng.hpp"
#include "coliseum/roots.hpp"

namespace coliseum {

namespace {

// Flat coefficient table; avoids __muldc3 in the per-sample loop.
struct FastGen {
  int deg;
  double re[17], im[17];
};

struct FastSys {
  std::vector<FastGen> gens;
  std::vector<double> cdf;
  double r2;  // escape_radius^2
  const GeneratorSystem* sys;
  bool generic = false;  // some generator exceeds the flat table

  explicit FastSys(const GeneratorSystem& s) : sys(&s) {
    r2 = s.escape_radius * s.escape_radius;
    double acc = 0.0;
    for (int j = 0; j < s.m(); ++j) {
      acc += s.weights[j];
      cdf.push_back(acc);
      const auto& c = s.generators[j].coeffs();
      if (c.size() > 17) {
        generic = true;
        continue;
      }
      FastGen g;
      g.deg = s.generators[j].degree();
      for (size_t k = 0; k < c.size(); ++k) {
        g.re[k] = c[k].real();
        g.im[k] = c[k].imag();
      }
      gens.push_back(g);
    }
  }

  int pick(double u) const {
    for (size_t j = 0; j + 1 < cdf.size(); ++j)
      if (u < cdf[j]) return static_cast<int>(j);
    return static_cast<int>(cdf.size()) - 1;
  }

  void step(int j, double& x, double& y) const {
    const FastGen& g = gens[j];
    double ar = g.re[g.deg], ai = g.im[g.deg];
    for (int k = g.deg - 1; k >= 0; --k) {
      double nr = ar * x - ai * y + g.re[k];
      ai = ar * y + ai * x + g.im[k];
      ar = nr;
    }
    x = ar;
    y = ai;
  }
};

SampleCounts estimate_T_point_fast(const FastSys& fs, cplx z0, int N, int n_max,
                                   uint64_t seed, uint64_t key) {
  SampleCounts c;
  const GeneratorSystem& sys = *fs.sys;
  const bool trap = sys.has_trap();

  // every sample classifies at step 0 the same way
  if (std::norm(z0) > fs.r2) {
    c.escaped = N;
    return c;
  }
  if (trap && sys.in_trap(z0)) {
    c.trapped = N;
    return c;
  }

  for (int s = 0; s < N; ++s) {
    RngStream rng(seed, key, static_cast<uint64_t>(s));
    double x = z0.real(), y = z0.imag();
    bool done = false;
    for (int n = 1; n <= n_max; ++n) {
      fs.step(fs.pick(rng.next_double()), x, y);
      if (x * x + y * y > fs.r2) {
        ++c.escaped;
        done = true;
        break;
      }
      if (std::abs(x) > kSaturation || std::abs(y) > kSaturation) {
        ++c.escaped;
        done = true;
        break;
      }
      if (trap && sys.in_trap(cplx(x, y))) {
        ++c.trapped;
        done = true;
        break;
      }
    }
    if (!done) ++c.undecided;
  }
  return c;
}

SampleCounts estimate_T_point_generic(const GeneratorSystem& sys, cplx z0, int N,
                                      int n_max, uint64_t seed, uint64_t key) {
  SampleCounts c;
  const double R = sys.escape_radius;
  for (int s = 0; s < N; ++s) {
    RngStream rng(seed, key, static_cast<uint64_t>(s));
    cplx z = z0;
    bool done = false;
    for (int n = 0; n <= n_max; ++n) {
      if (std::abs(z) > R) {
        ++c.escaped;
        done = true;
        break;
      }
      if (sys.has_trap() && sys.in_trap(z)) {
        ++c.trapped;
        done = true;
        break;
      }
      if (n == n_max) break;
      z = sys.generators[sys.pick(rng.next_double())](z);
    }
    if (!done) ++c.undecided;
  }
  return c;
}

}  // namespace

SampleCounts estimate_T_point(const GeneratorSystem& sys, cplx z0, int N, int n_max,
                              uint64_t seed, uint64_t key) {
  FastSys fs(sys);
  if (fs.generic) return estimate_T_point_generic(sys, z0, N, n_max, seed, key);
  return estimate_T_point_fast(fs, z0, N, n_max, seed, key);
}

namespace {

ScalarField render_T_impl(const GeneratorSystem& sys, const GridSpec& grid, int N,
                          int n_max, uint64_t seed, bool parallel) {
  ScalarField f(grid);
  f.meta = {seed, N, n_max, sys.hash()};
  const FastSys fs(sys);
  const long long total = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (long long i = 0; i < total; ++i) {
    SampleCounts c =
        fs.generic ? estimate_T_point_generic(sys, grid.center(i), N, n_max, seed,
                                              static_cast<uint64_t>(i))
                   : estimate_T_point_fast(fs, grid.center(i), N, n_max, seed,
                                           static_cast<uint64_t>(i));
    f.values[i] = static_cast<double>(c.escaped) / N;
    f.undecided[i] = static_cast<double>(c.undecided) / N;
  }
  return f;
}

}  // namespace

ScalarField render_T(const GeneratorSystem& sys, const GridSpec& grid, int N,
                     int n_max, uint64_t seed) {
  return render_T_impl(sys, grid, N, n_max, seed, true);
}

ScalarField render_T_serial(const GeneratorSystem& sys, const GridSpec& grid, int N,
                            int n_max, uint64_t seed) {
  return render_T_impl(sys, grid, N, n_max, seed, false);
}

ScalarField render_T_target(const GeneratorSystem& sys, const GridSpec& grid,
                            const Disk& target, int N, int n_max, uint64_t seed) {
  ScalarField f(grid);
  f.meta = {seed, N, n_max, sys.hash()};
  const double R = sys.escape_radius;
  const long long total = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 0; i < total; ++i) {
    cplx z0 = grid.center(i);
    int hit = 0, undec = 0;
    for (int s = 0; s < N; ++s) {
      RngStream rng(seed, static_cast<uint64_t>(i), static_cast<uint64_t>(s));
      cplx z = z0;
      int streak = 0;
      bool done = false;
      for (int n = 0; n <= n_max; ++n) {
        if (std::abs(z) > R) {  // matches render_T's escape rule exactly
          done = true;
          break;
        }
        streak = target.contains(z) ? streak + 1 : 0;
        if (streak >= 10) {
          ++hit;
          done = true;
          break;
        }
        if (n == n_max) break;
        z = sys.generators[sys.pick(rng.next_double())](z);
      }
      if (!done) ++undec;
    }
    f.values[i] = static_cast<double>(hit) / N;
    f.undecided[i] = static_cast<double>(undec) / N;
  }
  return f;
}

ScalarField operator_apply(const GeneratorSystem& sys, const ScalarField& field,
                           double boundary_value) {
  ScalarField out(field.grid);
  out.meta = field.meta;
  const long long total = static_cast<long long>(field.grid.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < total; ++i) {
    cplx z = field.grid.center(i);
    double v = 0.0;
    for (int j = 0; j < sys.m(); ++j)
      v += sys.weights[j] * field.interp(sys.generators[j](z), boundary_value);
    out.values[i] = v;
  }
  return out;
}

OperatorLimitReport operator_limit_check(const GeneratorSystem& sys,
                                         const ScalarField& phi, double phi_inf,
                                         const ScalarField& T, cplx mu_point,
                                         int steps, double boundary_value) {
  OperatorLimitReport rep;
  double phi_mu = phi.interp(mu_point, boundary_value);
  ScalarField cur = phi;
  for (int n = 0; n < steps; ++n) {
    cur = operator_apply(sys, cur, boundary_value);
    double sup = 0.0;
    for (size_t i = 0; i < cur.values.size(); ++i) {
      if (T.undecided[i] >= 0.01) continue;  // T estimate not settled there
      double limit = T.values[i] * phi_inf + (1.0 - T.values[i]) * phi_mu;
      sup = std::max(sup, std::abs(cur.values[i] - limit));
    }
    rep.sup_errors.push_back(sup);
  }
  rep.final_error = rep.sup_errors.back();
  // decreasing over the tail half
  rep.eventually_decreasing = true;
  for (size_t k = rep.sup_errors.size() / 2; k + 1 < rep.sup_errors.size(); ++k)
    if (rep.sup_errors[k + 1] > rep.sup_errors[k] + 1e-12)
      rep.eventually_decreasing = false;
  return rep;
}

RegionMask classify_julia(const GeneratorSystem& sys, const ScalarField& T,
                          int window) {
  (void)sys;
  RegionMask m(T.grid);
  int w = T.grid.width, h = T.grid.height;
  double stderr_bound = std::sqrt(0.25 / std::max(1, T.meta.samples));
  double thresh = 4.0 * stderr_bound;
#pragma omp parallel for schedule(static)
  for (long long y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double lo = 1e300, hi = -1e300;
      for (int dy = -window; dy <= window; ++dy)
        for (int dx = -window; dx <= window; ++dx) {
          int nx = x + dx, ny = static_cast<int>(y) + dy;
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          double v = T.values[static_cast<size_t>(ny) * w + nx];
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      m.bits[y * w + x] = (hi - lo) > thresh;
    }
  return m;
}

std::vector<cplx> julia_backward_cloud(const GeneratorSystem& sys, cplx seed_point,
                                       int iters, uint64_t rng_seed) {
  std::vector<cplx> out;
  RngStream rng(rng_seed, 0x6a756c6961ULL, 0);
  cplx z = seed_point;
  const int burn_in = 100;
  for (int k = 0; k < iters + burn_in; ++k) {
    int j = sys.pick(rng.next_double());
    std::vector<cplx> pre;
    try {
      pre = preimages(sys.generators[j], z);
    } catch (const RootSolveFailure&) {
      z = seed_point;  // reseed and skip
      continue;
    }
    z = pre[static_cast<size_t>(rng.next_double() * pre.size()) % pre.size()];
    if (k >= burn_in) out.push_back(z);
  }
  return out;
}

double green_value(const GeneratorSystem& sys, const std::vector<int>& letters,
                   cplx y) {
  // switch well before overflow: one step can square log|z|
  const double switch_mag = 1e15;
  cplx z = y;
  double value = 0.0;
  double deg_prod = 1.0;
  bool log_mode = false;
  for (int j : letters) {
    const Polynomial& g = sys.generators[j];
    if (!log_mode) {
      z = g(z);
      deg_prod *= g.degree();
      if (std::abs(z) > switch_mag) {
        log_mode = true;
        value = std::log(std::abs(z)) / deg_prod;
      }
    } else {
      // log|g(z)| ~ deg * log|z| + log|a| for huge |z|
      deg_prod *= g.degree();
      if (deg_prod < 1e300)
        value += std::log(std::abs(g.leading())) / deg_prod;
    }
  }
  if (!log_mode) {
    double l = std::log(std::abs(z));
    value = std::max(l, 0.0) / deg_prod;
  }
  return std::max(value, 0.0);
}

ScalarField green_field(const GeneratorSystem& sys, const std::vector<int>& letters,
                        const GridSpec& grid) {
  ScalarField f(grid);
  f.meta.system_hash = sys.hash();
  const long long total = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < total; ++i)
    f.values[i] = green_value(sys, letters, grid.center(i));
  return f;
}

}  // namespace coliseum
