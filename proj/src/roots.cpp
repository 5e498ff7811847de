#include "coliseum/roots.hpp"

#include <cmath>

#include "coliseum/errors.hpp"

namespace coliseum {

namespace {

// p(z) and p'(z) in one Horner pass, no saturation (roots stay modest).
void eval_with_deriv(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp) {
  p = c.back();
  dp = cplx(0.0);
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

}  // namespace

std::vector<cplx> aberth_roots(const Polynomial& poly, double tol, int max_sweeps) {
  const auto& c = poly.coeffs();
  int n = poly.degree();
  if (n < 1) return {};
  if (n == 1) return {-c[0] / c[1]};

  double r = 0.0;  // Cauchy bound
  for (int k = 0; k < n; ++k) r = std::max(r, std::abs(c[k] / c[n]));
  r = 1.0 + r;

  std::vector<cplx> z(n);
  const double two_pi = 6.283185307179586;
  for (int i = 0; i < n; ++i) {
    double th = two_pi * i / n + 0.4;
    z[i] = 0.7 * r * cplx(std::cos(th), std::sin(th));
  }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx p, dp;
      eval_with_deriv(c, z[i], p, dp);
      if (p == cplx(0.0)) continue;
      cplx w = (dp == cplx(0.0)) ? cplx(0.0) : p / dp;
      cplx s(0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cplx denom = 1.0 - w * s;
      cplx step = (denom == cplx(0.0)) ? w : w / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst < tol) return z;
  }
  throw RootSolveFailure("aberth did not converge in " + std::to_string(max_sweeps) +
                         " sweeps (degree " + std::to_string(n) + ")");
}

std::vector<cplx> preimages(const Polynomial& g, cplx w, double tol) {
  std::vector<cplx> c = g.coeffs();
  c[0] -= w;
  return aberth_roots(Polynomial(std::move(c)), tol);
}

}  // namespace coliseum
