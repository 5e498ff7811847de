#include "coliseum/system.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "coliseum/errors.hpp"
#include "coliseum/rng.hpp"
#include "coliseum/roots.hpp"

namespace coliseum {

uint64_t GeneratorSystem::hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& g : generators)
    for (const auto& c : g.coeffs()) {
      double re = c.real(), im = c.imag();
      h = fnv1a(&re, sizeof re, h);
      h = fnv1a(&im, sizeof im, h);
    }
  for (double w : weights) h = fnv1a(&w, sizeof w, h);
  return h;
}

GeneratorSystem build_system(std::vector<Polynomial> polys, std::vector<double> weights) {
  if (polys.empty() || polys.size() != weights.size())
    throw ConfigError("generator/weight count mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || (polys.size() >= 2 && !(w < 1.0)))
      throw WeightError("weights must lie in (0,1)");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw WeightError("weights must sum to 1");
  for (const auto& p : polys)
    if (p.degree() < 2)
      throw DegreeError("generator degree must be >= 2, got " +
                        std::to_string(p.degree()));
  for (size_t i = 0; i < polys.size(); ++i)
    for (size_t j = i + 1; j < polys.size(); ++j)
      if (polys[i] == polys[j]) throw DuplicateGenerator("generators must be distinct");
  GeneratorSystem sys;
  sys.escape_radius = escape_radius(polys);
  sys.generators = std::move(polys);
  sys.weights = std::move(weights);
  return sys;
}

TrapCertificate certify_trap(const GeneratorSystem& sys, const RegionMask& candidate) {
  TrapCertificate cert;
  RegionMask grown = dilate(candidate, 1);
  RegionMask inner = erode(grown, 1);    // = candidate up to raster quirks
  RegionMask inner2 = erode(grown, 2);
  auto clearance = [&](cplx w) -> double {
    auto i = grown.grid.pixel_of(w);
    if (!i || !grown.bits[*i]) return -1.0;
    if (inner2.bits[*i]) return 2.0;
    if (inner.bits[*i]) return 1.0;
    return 0.5;
  };
  double worst = 1e300;
  for (size_t i : boundary_pixels(candidate)) {
    cplx zeta = candidate.grid.center(i);
    for (int j = 0; j < sys.m(); ++j) {
      double c = clearance(sys.generators[j](zeta));
      ++cert.samples;
      if (c < worst) {
        worst = c;
        cert.worst_sample = zeta;
        cert.worst_generator = j;
      }
    }
  }
  cert.margin = worst;
  cert.ok = worst > 0.0;
  return cert;
}

TrapCertificate certify_trap(const GeneratorSystem& sys, const Disk& d, int samples) {
  TrapCertificate cert;
  cert.samples = samples * sys.m();
  double worst = 1e300;
  const double two_pi = 6.283185307179586;
  for (int k = 0; k < samples; ++k) {
    double th = two_pi * k / samples;
    cplx zeta = d.center + d.radius * cplx(std::cos(th), std::sin(th));
    for (int j = 0; j < sys.m(); ++j) {
      double c = d.radius - std::abs(sys.generators[j](zeta) - d.center);
      if (c < worst) {
        worst = c;
        cert.worst_sample = zeta;
        cert.worst_generator = j;
      }
    }
  }
  cert.margin = worst;
  cert.ok = worst > 0.0;
  return cert;
}

const char* to_string(BoundedVerdict v) {
  switch (v) {
    case BoundedVerdict::Bounded: return "bounded";
    case BoundedVerdict::Unbounded: return "unbounded";
    default: return "undecided";
  }
}

const char* to_string(DisjointVerdict v) {
  switch (v) {
    case DisjointVerdict::Disjoint: return "disjoint";
    case DisjointVerdict::Overlapping: return "overlapping";
    default: return "inconclusive";
  }
}

OrbitVerdict khat_membership(const GeneratorSystem& sys, cplx z, int depth,
                             long long n_budget) {
  struct Node {
    cplx z;
    int depth;
    std::string word;
  };
  std::deque<Node> stack{{z, 0, ""}};
  long long visited = 0;
  bool all_trapped = true;
  while (!stack.empty()) {
    Node n = stack.back();
    stack.pop_back();
    if (++visited > n_budget)
      return {OrbitVerdict::Undecided, n.depth, true, n.word};
    if (std::abs(n.z) > sys.escape_radius)
      return {OrbitVerdict::Escaped, n.depth, false, n.word};
    if (sys.has_trap() && sys.in_trap(n.z)) continue;  // branch certified bounded
    if (n.depth == depth) {
      all_trapped = false;
      continue;
    }
    for (int j = 0; j < sys.m(); ++j)
      stack.push_back({sys.generators[j](n.z), n.depth + 1,
                       n.word + static_cast<char>('1' + j)});
  }
  if (all_trapped && sys.has_trap()) return {OrbitVerdict::Trapped, depth, false, ""};
  return {OrbitVerdict::Undecided, depth, false, ""};
}

PostcriticalReport postcritical_sample(const GeneratorSystem& sys, int depth,
                                       long long budget) {
  PostcriticalReport rep;
  std::vector<cplx> seeds;
  for (const auto& g : sys.generators) {
    Polynomial dg = g.derivative();
    if (dg.degree() < 1) continue;
    for (cplx cp : aberth_roots(dg)) seeds.push_back(g(cp));
  }
  struct Node {
    cplx z;
    int depth;
  };
  std::deque<Node> stack;
  for (cplx s : seeds) stack.push_back({s, 0});
  long long visited = 0;
  bool all_trapped = true;
  bool exhausted = true;
  while (!stack.empty()) {
    Node n = stack.back();
    stack.pop_back();
    rep.points.push_back(n.z);
    if (std::abs(n.z) > sys.escape_radius) {
      rep.verdict = BoundedVerdict::Unbounded;
      return rep;
    }
    if (sys.has_trap() && sys.in_trap(n.z)) continue;
    if (n.depth == depth) {
      all_trapped = false;
      continue;
    }
    if (++visited > budget) {
      exhausted = false;
      break;
    }
    for (int j = 0; j < sys.m(); ++j)
      stack.push_back({sys.generators[j](n.z), n.depth + 1});
  }
  rep.verdict = (exhausted && all_trapped && sys.has_trap())
                    ? BoundedVerdict::Bounded
                    : BoundedVerdict::Undecided;
  return rep;
}

DisjointReport preimage_disjointness(const GeneratorSystem& sys,
                                     const RegionMask& annulus, const GridSpec& grid) {
  DisjointReport rep;
  rep.annulus_pixels = annulus.count();
  for (int j = 0; j < sys.m(); ++j) {
    RegionMask pre(grid);
    const Polynomial& g = sys.generators[j];
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
      pre.bits[i] = annulus.contains(g(grid.center(i)));
    rep.preimages.push_back(std::move(pre));
  }
  if (sys.m() == 1) {
    rep.verdict = DisjointVerdict::Disjoint;
    rep.union_inside = subset_of(erode(rep.preimages[0], 1), annulus);
    return rep;
  }
  bool eroded_disjoint = true;
  size_t dilated_overlap = 0;
  std::vector<RegionMask> er, di;
  for (const auto& p : rep.preimages) {
    er.push_back(erode(p, 1));
    di.push_back(dilate(p, 1));
  }
  for (int i = 0; i < sys.m(); ++i)
    for (int j = i + 1; j < sys.m(); ++j) {
      if (intersection_count(er[i], er[j]) > 0) eroded_disjoint = false;
      dilated_overlap += intersection_count(di[i], di[j]);
    }
  RegionMask uni(grid);
  for (const auto& p : er) uni = mask_or(uni, p);
  rep.union_inside = subset_of(uni, annulus);
  rep.overlap_pixels = dilated_overlap;
  if (eroded_disjoint && rep.union_inside)
    rep.verdict = DisjointVerdict::Disjoint;
  else if (dilated_overlap > rep.annulus_pixels / 1000)
    rep.verdict = DisjointVerdict::Overlapping;
  else
    rep.verdict = DisjointVerdict::Inconclusive;
  return rep;
}

RegionMask filled_julia_mask(const Polynomial& g, const GridSpec& grid, int n_max,
                             double R) {
  RegionMask m(grid);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
    auto v = filled_julia_membership(g, grid.center(i), n_max, R);
    m.bits[i] = v.kind == OrbitVerdict::Undecided;
  }
  return m;
}

RegionMask julia_mask(const Polynomial& g, const GridSpec& grid, int n_max, double R) {
  RegionMask k = filled_julia_mask(g, grid, n_max, R);
  return mask_minus(k, erode(k, 1));
}

RegionMask disk_mask(const GridSpec& grid, const Disk& d) {
  RegionMask m(grid);
  for (size_t i = 0; i < grid.size(); ++i) m.bits[i] = d.contains(grid.center(i));
  return m;
}

}  // namespace coliseum
