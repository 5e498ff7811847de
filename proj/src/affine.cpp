#include "coliseum/affine.hpp"

#include <algorithm>
#include <cmath>

#include "coliseum/errors.hpp"
#include "coliseum/rng.hpp"

namespace coliseum {

AffineMap psi(const Polynomial& g) {
  if (g.degree() < 2) throw DegreeError("psi needs degree >= 2");
  return {static_cast<double>(g.degree()), std::log(std::abs(g.leading()))};
}

AttractorReport mpsi_attractor(const std::vector<AffineMap>& maps, int depth) {
  AttractorReport rep;
  std::vector<double> fps;
  for (const auto& m : maps) {
    fps.push_back(m.fixed_point());
    rep.sum_inv_deg += 1.0 / std::abs(m.a);
  }
  rep.hull_lo = *std::min_element(fps.begin(), fps.end());
  rep.hull_hi = *std::max_element(fps.begin(), fps.end());

  std::vector<AffineMap> inv;
  for (const auto& m : maps) inv.push_back(m.inverse());

  if (maps.size() == 1) {
    rep.cantor_verdict = true;
    rep.endpoints = {rep.hull_lo, rep.hull_hi};
    return rep;
  }

  // depth-1 images of the hull, pairwise disjoint <=> Cantor construction
  struct Iv {
    double lo, hi;
  };
  std::vector<Iv> level1;
  for (const auto& f : inv) {
    double a = f(rep.hull_lo), b = f(rep.hull_hi);
    level1.push_back({std::min(a, b), std::max(a, b)});
  }
  rep.cantor_verdict = true;
  for (size_t i = 0; i < level1.size() && rep.cantor_verdict; ++i)
    for (size_t j = i + 1; j < level1.size(); ++j)
      if (!(level1[i].hi < level1[j].lo || level1[j].hi < level1[i].lo)) {
        rep.cantor_verdict = false;
        break;
      }

  std::vector<Iv> level = {{rep.hull_lo, rep.hull_hi}};
  for (int d = 0; d < depth; ++d) {
    if (level.size() * maps.size() > 100000) break;
    std::vector<Iv> next;
    for (const auto& iv : level)
      for (const auto& f : inv) {
        double a = f(iv.lo), b = f(iv.hi);
        next.push_back({std::min(a, b), std::max(a, b)});
      }
    level = std::move(next);
  }
  for (const auto& iv : level) {
    rep.endpoints.push_back(iv.lo);
    rep.endpoints.push_back(iv.hi);
  }
  std::sort(rep.endpoints.begin(), rep.endpoints.end());
  return rep;
}

namespace {

double recurse_T(const std::vector<AffineMap>& maps, const std::vector<double>& probs,
                 double x, int depth) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (depth == 0) return 0.5;
  double v = 0.0;
  for (size_t j = 0; j < maps.size(); ++j)
    v += probs[j] * recurse_T(maps, probs, maps[j](x), depth - 1);
  return v;
}

}  // namespace

double staircase_T(const std::vector<AffineMap>& maps, const std::vector<double>& probs,
                   double x, StaircaseMode mode, const StaircaseParams& params) {
  if (maps.size() != 2 || probs.size() != 2)
    throw ConfigError("staircase_T expects two branches");
  if (std::abs(maps[0](0.0)) > 1e-12 || std::abs(maps[1](1.0) - 1.0) > 1e-12 ||
      maps[0].a <= 1.0 || maps[1].a <= 1.0)
    throw UnsupportedSystem("branches must be expansions fixing 0 and 1");

  if (mode == StaircaseMode::ExactRecursion)
    return recurse_T(maps, probs, x, params.depth);

  int esc = 0;
  for (int s = 0; s < params.mc_samples; ++s) {
    RngStream rng(params.seed, 0x314421, static_cast<uint64_t>(s));
    double y = x;
    for (int n = 0; n < params.mc_n_max; ++n) {
      if (y > 1.0) {
        ++esc;
        break;
      }
      if (y < 0.0) break;  // tends to -infinity, not +infinity
      double u = rng.next_double();
      y = (u < probs[0]) ? maps[0](y) : maps[1](y);
    }
  }
  return static_cast<double>(esc) / params.mc_samples;
}

}  // namespace coliseum
