#include <cmath>

#include "coliseum/field_engine.hpp"
#include "coliseum/system.hpp"
#include "doctest.h"

using namespace coliseum;

namespace {
const Polynomial kH1 = Polynomial::parse("1,0,-2,0,1");
const Polynomial kH2 = Polynomial::parse("0,0,0,0,0.0625");

GeneratorSystem trapped62(const GridSpec& g, int n_max = 300) {
  GeneratorSystem sys = build_system({kH1, kH2}, {0.5, 0.5});
  sys.trap_mask = filled_julia_mask(kH1, g, n_max, escape_radius({kH1}));
  return sys;
}
}  // namespace

TEST_CASE("point estimates at anchor points") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 256, 256};
  GeneratorSystem sys = trapped62(g);

  SampleCounts at0 = estimate_T_point(sys, cplx(0, 0), 1000, 300, 7);
  CHECK(at0.escaped == 0);
  CHECK(at0.undecided == 0);

  SampleCounts far = estimate_T_point(sys, cplx(50, 0), 1000, 300, 7);
  CHECK(far.escaped == 1000);

  SampleCounts fix = estimate_T_point(sys, cplx(std::cbrt(16.0), 0), 4000, 300, 7);
  CHECK(static_cast<double>(fix.escaped) / 4000 >= 0.98);
}

TEST_CASE("render partition, range and thread determinism") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 64, 64};
  GeneratorSystem sys = trapped62(g);
  ScalarField par = render_T(sys, g, 200, 200, 7);
  ScalarField ser = render_T_serial(sys, g, 200, 200, 7);
  CHECK(par.values == ser.values);
  CHECK(par.undecided == ser.undecided);
  for (size_t i = 0; i < g.size(); ++i) {
    CHECK(par.values[i] >= 0.0);
    CHECK(par.values[i] <= 1.0);
    CHECK(par.undecided[i] >= 0.0);
    CHECK(par.undecided[i] <= 1.0);
  }
}

TEST_CASE("undecided mass is monotone in n_max") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 64, 64};
  GeneratorSystem sys = trapped62(g);
  ScalarField lo = render_T(sys, g, 100, 60, 7);
  ScalarField hi = render_T(sys, g, 100, 240, 7);
  for (size_t i = 0; i < g.size(); ++i)
    CHECK(hi.undecided[i] <= lo.undecided[i] + 1e-12);
}

TEST_CASE("render_T_target partitions with render_T") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 48, 48};
  GeneratorSystem sys = build_system({kH1, kH2}, {0.5, 0.5});  // no trap shortcut
  ScalarField T = render_T(sys, g, 150, 200, 7);
  ScalarField Tt = render_T_target(sys, g, Disk{cplx(0, 0), 1.7}, 150, 200, 7);
  // a sample that escapes before its target streak always escapes in T,
  // so escaped + hit + target-undecided >= 1 pixelwise and ~1 on average
  double mean = 0.0;
  for (size_t i = 0; i < g.size(); ++i) {
    double s = T.values[i] + Tt.values[i] + Tt.undecided[i];
    CHECK(s >= 1.0 - 1e-12);
    mean += s;
  }
  mean /= g.size();
  CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
  // non-escaping orbits from the trap interior stay inside D(0,1.7)
  auto c = g.pixel_of(cplx(0, 0));
  REQUIRE(c);
  CHECK(Tt.values[*c] == doctest::Approx(1.0));
  auto far = g.pixel_of(cplx(2.7, 2.7));
  REQUIRE(far);
  CHECK(Tt.values[*far] == doctest::Approx(0.0));
}

TEST_CASE("operator_apply preserves constants and single-map composition") {
  GridSpec g = {-2.0, 2.0, -2.0, 2.0, 64, 64};
  GeneratorSystem sys = trapped62(g);
  ScalarField c(g);
  for (auto& v : c.values) v = 0.37;
  ScalarField mc = operator_apply(sys, c, 0.37);
  for (size_t i = 0; i < g.size(); ++i)
    CHECK(mc.values[i] == doctest::Approx(0.37).epsilon(1e-12));

  GeneratorSystem sq = build_system({Polynomial::parse("0,0,1")}, {1.0});
  ScalarField lin(g);
  for (size_t i = 0; i < g.size(); ++i) lin.values[i] = g.center(i).real();
  ScalarField ml = operator_apply(sq, lin, 0.0);
  for (double x = -0.5; x <= 0.5; x += 0.11)
    for (double y = -0.5; y <= 0.5; y += 0.13) {
      cplx z(x, y);
      auto i = g.pixel_of(z);
      REQUIRE(i);
      cplx zc = g.center(*i);
      CHECK(ml.values[*i] == doctest::Approx((zc * zc).real()).epsilon(1e-9));
    }
}

TEST_CASE("operator_apply keeps the fixed-point residual small") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 128, 128};
  GeneratorSystem sys = trapped62(g);
  int N = 500;
  ScalarField T = render_T(sys, g, N, 300, 7);
  ScalarField MT = operator_apply(sys, T, 1.0);
  double maxjump = 0.0;
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x + 1 < g.width; ++x) {
      size_t i = static_cast<size_t>(y) * g.width + x;
      maxjump = std::max(maxjump, std::abs(T.values[i] - T.values[i + 1]));
      if (y + 1 < g.height)
        maxjump = std::max(maxjump, std::abs(T.values[i] - T.values[i + g.width]));
    }
  double resid = 0.0;
  for (size_t i = 0; i < g.size(); ++i)
    if (T.undecided[i] < 0.01)
      resid = std::max(resid, std::abs(MT.values[i] - T.values[i]));
  CHECK(resid <= 3.0 * (std::sqrt(0.25 / N) + maxjump));
}

TEST_CASE("operator limit check on constants and on T itself") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 64, 64};
  GeneratorSystem sys = trapped62(g);
  ScalarField T = render_T(sys, g, 300, 300, 7);

  ScalarField ones(g);
  for (auto& v : ones.values) v = 1.0;
  OperatorLimitReport r1 = operator_limit_check(sys, ones, 1.0, T, cplx(0, 0), 10, 1.0);
  for (double e : r1.sup_errors) CHECK(e <= 1e-9);

  OperatorLimitReport rt = operator_limit_check(sys, T, 1.0, T, cplx(0, 0), 10, 1.0);
  CHECK(rt.final_error <= rt.sup_errors.front() + 0.05);
}

TEST_CASE("classify_julia marks J anchors and spares constant zones") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 256, 256};
  GeneratorSystem sys = trapped62(g);
  ScalarField T = render_T(sys, g, 500, 300, 7);
  RegionMask band = classify_julia(sys, T, 1);
  CHECK(dilate(band, 1).contains(cplx(std::cbrt(16.0), 0)));
  CHECK(dilate(band, 1).contains(cplx(1.4889, 0)));  // repelling fixed point of h1
  RegionMask deep = erode(*sys.trap_mask, 3);
  CHECK(intersection_count(band, deep) == 0);

  GridSpec farg = {50.0, 54.0, 50.0, 54.0, 64, 64};
  GeneratorSystem farsys = build_system({kH1, kH2}, {0.5, 0.5});
  ScalarField farT = render_T(farsys, farg, 100, 50, 7);
  CHECK(classify_julia(farsys, farT, 1).count() == 0);
}

TEST_CASE("backward cloud of z^2 lands on the unit circle") {
  GeneratorSystem sq = build_system({Polynomial::parse("0,0,1")}, {1.0});
  auto cloud = julia_backward_cloud(sq, cplx(2, 0), 300, 5);
  CHECK(cloud.size() >= 200);
  for (cplx z : cloud) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-6);
  auto again = julia_backward_cloud(sq, cplx(2, 0), 300, 5);
  CHECK(cloud == again);
}

TEST_CASE("green field closed forms for the z^4/16 word") {
  GeneratorSystem sys = build_system({kH1, kH2}, {0.5, 0.5});
  std::vector<int> word(12, 1);  // h2 repeated
  double r = std::cbrt(16.0);
  CHECK(green_value(sys, word, cplx(r, 0)) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(green_value(sys, word, cplx(2 * r, 0)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));
  double prev = 0.0;
  for (double s = 5.0; s <= 40.0; s *= 2) {  // monotone along a ray
    double v = green_value(sys, word, cplx(s, 0));
    CHECK(v > prev);
    prev = v;
  }
}
