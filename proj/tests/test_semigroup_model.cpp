#include <cmath>

#include "coliseum/errors.hpp"
#include "coliseum/rng.hpp"
#include "coliseum/system.hpp"
#include "doctest.h"

using namespace coliseum;

namespace {
const Polynomial kH1 = Polynomial::parse("1,0,-2,0,1");
const Polynomial kH2 = Polynomial::parse("0,0,0,0,0.0625");

GeneratorSystem example62() {
  return build_system({kH1, kH2}, {0.5, 0.5});
}

RegionMask k1_mask(const GridSpec& g, int n_max = 300) {
  return filled_julia_mask(kH1, g, n_max, escape_radius({kH1}));
}
}  // namespace

TEST_CASE("build_system basics") {
  GeneratorSystem sys = example62();
  CHECK(sys.m() == 2);
  CHECK(sys.escape_radius == doctest::Approx(32.0));
  CHECK_FALSE(sys.has_trap());

  GeneratorSystem one = build_system({Polynomial::parse("0,0,1")}, {1.0});
  CHECK(one.m() == 1);
}

TEST_CASE("build_system error paths") {
  CHECK_THROWS_AS(build_system({kH1, kH2}, {0.6, 0.6}), WeightError);
  CHECK_THROWS_AS(build_system({kH1, kH2}, {1.0, 0.0}), WeightError);
  CHECK_THROWS_AS(build_system({Polynomial::parse("0,1")}, {1.0}), DegreeError);
  CHECK_THROWS_AS(
      build_system({Polynomial::parse("0,0,1"), Polynomial::parse("0,0,1")},
                   {0.5, 0.5}),
      DuplicateGenerator);
}

TEST_CASE("certify_trap accepts K(h1) and rejects the bare disk") {
  GeneratorSystem sys = example62();
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 256, 256};
  TrapCertificate cert = certify_trap(sys, k1_mask(g));
  CHECK(cert.ok);
  CHECK(cert.samples > 0);

  TrapCertificate bad = certify_trap(sys, Disk{cplx(0, 0), 0.4}, 256);
  CHECK_FALSE(bad.ok);  // h1(0.4) ~ 0.7056 leaves the disk
  CHECK(bad.worst_generator == 0);

  GeneratorSystem sq = build_system({Polynomial::parse("0,0,1")}, {1.0});
  CHECK(certify_trap(sq, Disk{cplx(0, 0), 0.5}, 256).ok);
}

TEST_CASE("certified trap absorbs sampled word orbits") {
  GeneratorSystem sys = example62();
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 256, 256};
  RegionMask k1 = k1_mask(g);
  REQUIRE(certify_trap(sys, k1).ok);
  RegionMask inner = erode(k1, 2);
  RngStream rng(11, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    size_t i = static_cast<size_t>(rng.next_double() * g.size()) % g.size();
    if (!inner.at(i)) continue;
    cplx z = g.center(i);
    for (int step = 0; step < 10; ++step) {
      z = sys.generators[sys.pick(rng.next_double())](z);
      CHECK(dilate(k1, 1).contains(z));
    }
  }
}

TEST_CASE("khat membership on Example 6.2") {
  GeneratorSystem sys = example62();
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 256, 256};
  sys.trap_mask = k1_mask(g);

  CHECK(khat_membership(sys, cplx(0, 0)).kind == OrbitVerdict::Trapped);
  CHECK(khat_membership(sys, cplx(3, 0)).kind == OrbitVerdict::Escaped);
  CHECK(khat_membership(sys, cplx(std::cbrt(16.0), 0)).kind == OrbitVerdict::Escaped);
}

TEST_CASE("escape witness is stable under depth increase") {
  GeneratorSystem sys = example62();
  for (double x : {1.7, 2.0, 2.4, 2.6}) {
    // without a trap the tree must stay inside the node budget
    auto lo = khat_membership(sys, cplx(x, 0.2), 8);
    auto hi = khat_membership(sys, cplx(x, 0.2), 12);
    if (lo.kind == OrbitVerdict::Escaped) CHECK(hi.kind == OrbitVerdict::Escaped);
  }
}

TEST_CASE("khat agrees with K(h1) away from the boundary band") {
  GeneratorSystem sys = example62();
  GridSpec probe = {-2.8, 2.8, -2.8, 2.8, 64, 64};
  RegionMask k1 = k1_mask(probe);
  GridSpec fine = {-2.8, 2.8, -2.8, 2.8, 256, 256};
  sys.trap_mask = k1_mask(fine);
  RegionMask deep = erode(k1, 2), fat = dilate(k1, 2);
  int disagreements = 0;
  for (size_t i = 0; i < probe.size(); ++i) {
    auto v = khat_membership(sys, probe.center(i), 16, 200000);
    bool in_khat = v.kind == OrbitVerdict::Trapped;
    bool in_k1 = k1.at(i);
    if (in_khat != in_k1 && (deep.at(i) || !fat.at(i))) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("postcritical sample") {
  GeneratorSystem sys = example62();
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 256, 256};
  sys.trap_mask = k1_mask(g);
  PostcriticalReport rep = postcritical_sample(sys, 12, 100000);
  CHECK(rep.verdict == BoundedVerdict::Bounded);
  RegionMask fat = dilate(*sys.trap_mask, 1);
  for (cplx z : rep.points) CHECK(fat.contains(z));

  GeneratorSystem swapped = build_system({kH2, kH1}, {0.5, 0.5});
  swapped.trap_mask = sys.trap_mask;
  CHECK(postcritical_sample(swapped, 12, 100000).verdict == BoundedVerdict::Bounded);

  GeneratorSystem bad = build_system(
      {Polynomial::parse("10,0,1"), Polynomial::parse("0,0,1")}, {0.5, 0.5});
  CHECK(postcritical_sample(bad, 12, 100000).verdict == BoundedVerdict::Unbounded);

  GeneratorSystem sq = build_system({Polynomial::parse("0,0,1")}, {1.0});
  sq.trap_disk = Disk{cplx(0, 0), 0.5};
  CHECK(postcritical_sample(sq, 12, 100000).verdict == BoundedVerdict::Bounded);
}

TEST_CASE("preimage disjointness verdicts") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 256, 256};

  GeneratorSystem one = build_system({Polynomial::parse("0,0,1")}, {1.0});
  RegionMask ring(g);
  for (size_t i = 0; i < g.size(); ++i) {
    double r = std::abs(g.center(i));
    ring.bits[i] = r >= 0.8 && r <= 1.2;
  }
  CHECK(preimage_disjointness(one, ring, g).verdict == DisjointVerdict::Disjoint);

  GeneratorSystem close = build_system(
      {Polynomial::parse("0,0,1"), Polynomial::parse("0.01,0,1")}, {0.5, 0.5});
  CHECK(preimage_disjointness(close, ring, g).verdict ==
        DisjointVerdict::Overlapping);

  // spec variant of Example 6.2: J(h1) filaments enter D(0,0.4), so the
  // K(h2)-minus-disk annulus recipe reports overlap (see ledger); the report
  // still carries the pixel evidence
  GeneratorSystem sys = example62();
  RegionMask k2 = filled_julia_mask(kH2, g, 300, escape_radius({kH2}));
  RegionMask ann = mask_minus(k2, disk_mask(g, {cplx(0, 0), 0.4}));
  DisjointReport rep = preimage_disjointness(sys, ann, g);
  CHECK(rep.verdict == DisjointVerdict::Overlapping);
  CHECK(rep.annulus_pixels > 0);
  CHECK(rep.preimages.size() == 2);
}

TEST_CASE("filled julia mask and disk mask rasters") {
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 128, 128};
  RegionMask k1 = k1_mask(g);
  CHECK(k1.contains(cplx(0, 0)));
  CHECK(k1.contains(cplx(1, 0)));
  CHECK_FALSE(k1.contains(cplx(2.5, 0)));
  RegionMask d = disk_mask(g, {cplx(0, 0), 1.0});
  CHECK(d.contains(cplx(0.5, 0.5)));
  CHECK_FALSE(d.contains(cplx(1.2, 0)));
  RegionMask band = julia_mask(kH2, g, 300, escape_radius({kH2}));
  CHECK(band.count() > 0);
  CHECK(subset_of(band, filled_julia_mask(kH2, g, 300, escape_radius({kH2}))));
}
