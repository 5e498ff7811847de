#include <cmath>
#include <random>

#include "coliseum/affine.hpp"
#include "coliseum/errors.hpp"
#include "coliseum/polynomial.hpp"
#include "doctest.h"

using namespace coliseum;

namespace {
const std::vector<AffineMap> kCantor = {{3.0, 0.0}, {3.0, -2.0}};
const std::vector<AffineMap> kLebesgue = {{2.0, 0.0}, {2.0, -1.0}};

Polynomial random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(2, 4);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::vector<cplx> c(deg(rng) + 1);
  for (auto& v : c) v = cplx(coef(rng), coef(rng));
  if (std::abs(c.back()) < 0.1) c.back() = cplx(1.0, 0.3);
  return Polynomial(c);
}
}  // namespace

TEST_CASE("psi of the example generators") {
  AffineMap a = psi(Polynomial::parse("1,0,-2,0,1"));
  CHECK(a.a == doctest::Approx(4.0));
  CHECK(a.b == doctest::Approx(0.0));
  AffineMap b = psi(Polynomial::parse("0,0,0,0,0.0625"));
  CHECK(b.a == doctest::Approx(4.0));
  CHECK(b.b == doctest::Approx(-std::log(16.0)).epsilon(1e-12));
}

TEST_CASE("psi is a composition homomorphism") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 50; ++k) {
    Polynomial g = random_poly(rng), h = random_poly(rng);
    AffineMap lhs = psi(compose(g, h));
    AffineMap rhs = psi(g).after(psi(h));
    CHECK(lhs.a == doctest::Approx(rhs.a).epsilon(1e-12));
    CHECK(lhs.b == doctest::Approx(rhs.b).epsilon(1e-12));
  }
  // chains of length 5
  for (int k = 0; k < 10; ++k) {
    Polynomial p = random_poly(rng);
    AffineMap acc = psi(p);
    Polynomial comp = p;
    for (int j = 1; j < 5; ++j) {
      Polynomial q = Polynomial::parse("0,0,1");
      comp = compose(q, comp, 1 << 20);
      acc = psi(q).after(acc);
    }
    CHECK(psi(comp).a == doctest::Approx(acc.a).epsilon(1e-12));
    CHECK(psi(comp).b == doctest::Approx(acc.b).epsilon(1e-9));
  }
}

TEST_CASE("mpsi attractor of Example 6.2") {
  std::vector<AffineMap> maps = {psi(Polynomial::parse("1,0,-2,0,1")),
                                 psi(Polynomial::parse("0,0,0,0,0.0625"))};
  AttractorReport rep = mpsi_attractor(maps, 6);
  CHECK(rep.hull_lo == doctest::Approx(0.0));
  CHECK(rep.hull_hi == doctest::Approx(std::log(16.0) / 3).epsilon(1e-12));
  CHECK(rep.cantor_verdict);
  CHECK(rep.sum_inv_deg == doctest::Approx(0.5));
  CHECK(!rep.endpoints.empty());
  // depth-1 images: [0, hull/4 + 0] and [(hull + log16)/4 ... ]
  double lo2 = (0.0 + std::log(16.0)) / 4.0;
  CHECK(lo2 > rep.hull_hi / 4.0);  // gap between the two branch images
}

TEST_CASE("mpsi attractor degenerate systems") {
  std::vector<AffineMap> twin = {{2.0, 0.0}, {2.0, 0.0}};
  AttractorReport overlap = mpsi_attractor(twin, 4);
  CHECK(overlap.sum_inv_deg == doctest::Approx(1.0));
  CHECK_FALSE(overlap.cantor_verdict);

  AttractorReport single = mpsi_attractor({{4.0, 1.0}}, 4);
  CHECK(single.cantor_verdict);
  CHECK(single.hull_lo == doctest::Approx(single.hull_hi));
}

TEST_CASE("attractor endpoints are IFS-invariant") {
  std::vector<AffineMap> maps = {psi(Polynomial::parse("1,0,-2,0,1")),
                                 psi(Polynomial::parse("0,0,0,0,0.0625"))};
  AttractorReport d5 = mpsi_attractor(maps, 5);
  AttractorReport d6 = mpsi_attractor(maps, 6);
  // applying an inverse branch to the depth-5 set stays within the depth-6 set
  for (const AffineMap& m : maps) {
    AffineMap inv = m.inverse();
    for (double x : d5.endpoints) {
      double y = inv(x);
      double best = 1e9;
      for (double e : d6.endpoints) best = std::min(best, std::abs(e - y));
      CHECK(best <= 1e-9);
    }
  }
}

TEST_CASE("staircase anchor values") {
  CHECK(staircase_T(kCantor, {0.5, 0.5}, 0.5, StaircaseMode::ExactRecursion) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(staircase_T(kCantor, {0.5, 0.5}, 1.0 / 3, StaircaseMode::ExactRecursion) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(staircase_T(kLebesgue, {0.3, 0.7}, 0.5, StaircaseMode::ExactRecursion) ==
        doctest::Approx(0.3).epsilon(1e-12));
  for (double a = 0.1; a < 0.95; a += 0.1)
    CHECK(staircase_T(kLebesgue, {a, 1.0 - a}, 0.5, StaircaseMode::ExactRecursion) ==
          doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("lebesgue a=1/2 is the identity") {
  for (int k = 0; k <= 1000; ++k) {
    double x = k / 1000.0;
    CHECK(staircase_T(kLebesgue, {0.5, 0.5}, x, StaircaseMode::ExactRecursion) ==
          doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("staircase is non-decreasing") {
  for (auto& [maps, probs] :
       {std::pair{kCantor, std::vector<double>{0.5, 0.5}},
        {kLebesgue, std::vector<double>{0.25, 0.75}}}) {
    double prev = -1.0;
    for (int k = 0; k <= 10000; ++k) {
      double v = staircase_T(maps, probs, k / 10000.0, StaircaseMode::ExactRecursion);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("monte carlo agrees with the recursion") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  StaircaseParams mc;
  mc.mc_samples = 4000;
  mc.seed = 99;
  for (auto& [maps, probs] :
       {std::pair{kCantor, std::vector<double>{0.5, 0.5}},
        {kLebesgue, std::vector<double>{0.3, 0.7}}}) {
    for (int k = 0; k < 100; ++k) {
      double x = ux(rng);
      double ex = staircase_T(maps, probs, x, StaircaseMode::ExactRecursion);
      double est = staircase_T(maps, probs, x, StaircaseMode::MonteCarlo, mc);
      double se = std::sqrt(std::max(ex * (1 - ex), 1e-6) / mc.mc_samples);
      CHECK(std::abs(est - ex) <= 3.5 * se);
    }
  }
}

TEST_CASE("staircase rejects systems not fixing {0,1}") {
  CHECK_THROWS_AS(staircase_T({{3.0, 0.1}, {3.0, -2.0}}, {0.5, 0.5}, 0.5,
                              StaircaseMode::ExactRecursion),
                  UnsupportedSystem);
}
