#include "coliseum/symbolic.hpp"

#include <algorithm>
#include <cmath>

#include "coliseum/errors.hpp"
#include "coliseum/rng.hpp"
#include "coliseum/roots.hpp"

namespace coliseum {

namespace {

void check_wp(const std::vector<int>& degs, const std::vector<double>& p) {
  if (degs.empty() || degs.size() != p.size())
    throw WeightError("degree/weight count mismatch");
  double sum = 0.0;
  for (double w : p) {
    if (!(w > 0.0 && w < 1.0) && p.size() > 1) throw WeightError("p_j must be in (0,1)");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw WeightError("weights must sum to 1");
  for (int d : degs)
    if (d < 2) throw WeightError("degrees must be >= 2");
}

void entropy_sums(const std::vector<int>& degs, const std::vector<double>& p,
                  double& ent, double& lyap, double& sum_inv) {
  ent = lyap = sum_inv = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    ent += -p[j] * std::log(p[j]);
    lyap += p[j] * std::log(static_cast<double>(degs[j]));
    sum_inv += 1.0 / degs[j];
  }
}

}  // namespace

ExponentResult u_exponent(const std::vector<int>& degs, const std::vector<double>& p) {
  check_wp(degs, p);
  double ent, lyap, sum_inv;
  entropy_sums(degs, p, ent, lyap, sum_inv);
  return {ent / lyap, sum_inv, sum_inv < 1.0};
}

ExponentResult dim_lower_bound(const std::vector<int>& degs,
                               const std::vector<double>& p) {
  check_wp(degs, p);
  double ent, lyap, sum_inv;
  entropy_sums(degs, p, ent, lyap, sum_inv);
  return {(lyap + ent) / lyap, sum_inv, sum_inv < 1.0};
}

double t_value_of_word(double p1, double p2, const Word& word) {
  Word w = word.canonical();
  if (w.alphabet_max() > 2) throw AlphabetError("t value requires a {1,2} word");
  double pw[3] = {0.0, p1, p2};
  double total = 0.0, prod = 1.0;
  for (int d : w.prefix) {
    if (d == 2) total += p1 * prod;
    prod *= pw[d];
  }
  if (!w.cycle.empty()) {
    double cyc_sum = 0.0, cyc_prod = 1.0;
    for (int d : w.cycle) {
      if (d == 2) cyc_sum += p1 * cyc_prod;
      cyc_prod *= pw[d];
    }
    total += prod * cyc_sum / (1.0 - cyc_prod);
  }
  return total;
}

std::vector<Word> invert_t(double p1, double p2, double t, int depth) {
  const double tol = 1e-12;
  std::vector<int> digits;
  std::vector<double> seen{t};
  for (int n = 0; n < depth; ++n) {
    if (std::abs(t - p1) <= tol) {
      // exact gap: two spellings
      Word lo, hi;
      lo.prefix = digits;
      lo.prefix.push_back(1);
      lo.cycle = {2};
      hi.prefix = digits;
      hi.prefix.push_back(2);
      hi.cycle = {1};
      return {lo.canonical(), hi.canonical()};
    }
    if (t < p1) {
      digits.push_back(1);
      t /= p1;
    } else {
      digits.push_back(2);
      t = (t - p1) / p2;
    }
    for (size_t k = 0; k < seen.size(); ++k) {
      if (std::abs(seen[k] - t) <= tol) {
        Word w;
        w.prefix.assign(digits.begin(), digits.begin() + k);
        w.cycle.assign(digits.begin() + k, digits.end());
        return {w.canonical()};
      }
    }
    seen.push_back(t);
  }
  Word w;
  w.prefix = digits;
  return {w};
}

ComponentDescriptor component_of_word(const GeneratorSystem& sys, const Word& word,
                                      int iters, uint64_t rng_seed, int degree_cap) {
  Word w = word.canonical();
  if (w.cycle.empty()) throw ConfigError("component_of_word needs an eventually periodic word");
  if (static_cast<int>(w.alphabet_max()) > sys.m())
    throw AlphabetError("word digit exceeds generator count");
  ComponentDescriptor desc;
  desc.word = w;
  if (sys.m() == 2) desc.t_value = t_value_of_word(sys.weights[0], sys.weights[1], w);

  size_t s = w.prefix.size();
  // return composition of the cycle: h_{w_{s+q}} o ... o h_{w_{s+1}}
  Polynomial ret = sys.generators[w.cycle[0] - 1];
  for (size_t k = 1; k < w.cycle.size(); ++k)
    ret = compose(sys.generators[w.cycle[k] - 1], ret, degree_cap);
  (void)ret;  // composed only to enforce the degree cap

  // backward chaos game letter by letter: pulling one period back through
  // h_{w_{s+q}} o ... o h_{w_{s+1}} keeps every root solve at generator degree
  RngStream crng(rng_seed, 0x636f6d70ULL, 0);
  cplx z(sys.escape_radius, 0.0);
  const int burn = 32;
  desc.cloud.clear();
  desc.cloud.reserve(static_cast<size_t>(std::max(iters, 0)));
  for (int it = 0; it < burn + iters; ++it) {
    bool ok = true;
    for (size_t k = w.cycle.size(); k-- > 0;) {
      const Polynomial& g = sys.generators[w.cycle[k] - 1];
      try {
        auto roots = preimages(g, z);
        z = roots[static_cast<size_t>(crng.next_double() * roots.size()) % roots.size()];
      } catch (const RootSolveFailure&) {
        z = cplx(sys.escape_radius, 0.0);
        ok = false;
        break;
      }
    }
    if (ok && it >= burn) desc.cloud.push_back(z);
  }

  // pull back through the prefix, last letter first
  RngStream rng(rng_seed, 0x70756c6cULL, 1);
  const size_t cap = std::max<size_t>(static_cast<size_t>(iters), 1000);
  for (size_t k = s; k-- > 0;) {
    const Polynomial& g = sys.generators[w.prefix[k] - 1];
    std::vector<cplx> pulled;
    pulled.reserve(desc.cloud.size() * g.degree());
    for (cplx z : desc.cloud) {
      try {
        for (cplx r : preimages(g, z)) pulled.push_back(r);
      } catch (const RootSolveFailure&) {
      }
    }
    if (pulled.size() > cap) {
      // deterministic subsample
      std::vector<cplx> keep;
      keep.reserve(cap);
      for (size_t i = 0; i < cap; ++i)
        keep.push_back(pulled[static_cast<size_t>(rng.next_double() * pulled.size()) %
                              pulled.size()]);
      pulled = std::move(keep);
    }
    desc.cloud = std::move(pulled);
  }
  return desc;
}

const char* to_string(Surround s) {
  switch (s) {
    case Surround::ALess: return "a<s<b";
    case Surround::BLess: return "b<s<a";
    case Surround::Equal: return "equal";
    default: return "incomparable";
  }
}

Surround surrounding_compare(const RegionMask& a, const RegionMask& b) {
  if (a.grid != b.grid) throw ConfigError("surrounding_compare: grid mismatch");
  if (!is_connected8(a) || !is_connected8(b))
    throw DisconnectedMask("surrounding_compare needs connected masks");
  if (a.bits == b.bits) return Surround::Equal;
  auto less = [](const RegionMask& x, const RegionMask& y) {
    RegionMask unbounded = unbounded_complement(y);
    for (size_t i = 0; i < x.bits.size(); ++i)
      if (x.bits[i] && (y.bits[i] || unbounded.bits[i])) return false;
    return true;
  };
  bool ab = less(a, b), ba = less(b, a);
  if (ab && !ba) return Surround::ALess;
  if (ba && !ab) return Surround::BLess;
  return Surround::Incomparable;
}

std::vector<double> dyadic_radii(const GridSpec& grid, int from_px, int count) {
  std::vector<double> out;
  double px = std::min(grid.dx(), grid.dy());
  for (int k = 0; k < count; ++k) out.push_back(px * (from_px >> k));
  return out;
}

HolderEstimate empirical_holder(const ScalarField& T, cplx z0,
                                const std::vector<double>& radii) {
  HolderEstimate est;
  est.radii = radii;
  est.z0 = z0;
  auto i0 = T.grid.pixel_of(z0);
  if (!i0) throw ConfigError("holder point outside grid");
  double v0 = T.values[*i0];
  int x0 = static_cast<int>(*i0) % T.grid.width, y0 = static_cast<int>(*i0) / T.grid.width;

  double noise_floor = 3.0 * std::sqrt(0.25 / std::max(1, T.meta.samples));
  std::vector<double> lx, ly;
  int rpx_max = static_cast<int>(std::ceil(radii.front() / std::min(T.grid.dx(), T.grid.dy()))) + 1;
  for (double r : radii) {
    double maxdiff = 0.0;
    for (int dy = -rpx_max; dy <= rpx_max; ++dy)
      for (int dx = -rpx_max; dx <= rpx_max; ++dx) {
        int x = x0 + dx, y = y0 + dy;
        if (x < 0 || x >= T.grid.width || y < 0 || y >= T.grid.height) continue;
        cplx z = T.grid.center(x, y);
        if (std::abs(z - z0) > r || (dx == 0 && dy == 0)) continue;
        maxdiff = std::max(maxdiff, std::abs(T.values[static_cast<size_t>(y) * T.grid.width + x] - v0));
      }
    if (maxdiff > 0.0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(maxdiff));
    }
  }
  if (lx.size() < 3) {
    est.reliable = false;
    return est;
  }
  double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
    syy += ly[k] * ly[k];
  }
  double denom = n * sxx - sx * sx;
  est.exponent = (n * sxy - sx * sy) / denom;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  double intercept = (sy - est.exponent * sx) / n;
  for (size_t k = 0; k < lx.size(); ++k) {
    double e = ly[k] - (intercept + est.exponent * lx[k]);
    ss_res += e * e;
  }
  est.fit_quality = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
  double max_var = 0.0;
  for (double v : ly) max_var = std::max(max_var, std::exp(v));
  est.reliable = est.fit_quality >= 0.5 && max_var > noise_floor;
  return est;
}

std::vector<cplx> sample_lambda_typical(const GeneratorSystem& sys, int n_points,
                                        int word_len, uint64_t rng_seed) {
  std::vector<cplx> out;
  out.reserve(n_points);
  for (int k = 0; k < n_points; ++k) {
    RngStream rng(rng_seed, 0x6c616d626461ULL, static_cast<uint64_t>(k));
    std::vector<int> word(word_len);
    for (int& d : word) d = sys.pick(rng.next_double());
    cplx z = cplx(sys.escape_radius, 0.0);
    bool ok = true;
    // reversed word, uniform root choice at each backward step
    for (int n = word_len; n-- > 0;) {
      try {
        auto pre = preimages(sys.generators[word[n]], z);
        z = pre[static_cast<size_t>(rng.next_double() * pre.size()) % pre.size()];
      } catch (const RootSolveFailure&) {
        ok = false;
        break;
      }
    }
    if (ok)
      out.push_back(z);
    else
      --k, rng_seed = splitmix64(rng_seed);  // reseed and retry
  }
  return out;
}

TrichotomyResult classify_3gen(const GeneratorSystem& sys, const RegionMask& annulus,
                               const GridSpec& grid, int julia_n_max) {
  if (sys.m() != 3) throw ConfigError("classify_3gen needs exactly 3 generators");
  TrichotomyResult res;

  // innermost-first order of the single-map julia masks
  std::vector<RegionMask> jm;
  for (const auto& g : sys.generators)
    jm.push_back(dilate(julia_mask(g, grid, julia_n_max, escape_radius({g})), 2));
  res.order = {0, 1, 2};
  std::sort(res.order.begin(), res.order.end(), [&](int a, int b) {
    return surrounding_compare(jm[a], jm[b]) == Surround::ALess;
  });

  std::vector<RegionMask> pre;
  for (int idx : res.order) {
    RegionMask p(grid);
    const Polynomial& g = sys.generators[idx];
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i)
      p.bits[i] = annulus.contains(g(grid.center(i)));
    pre.push_back(std::move(p));
  }

  size_t annulus_px = annulus.count();
  auto pair_verdict = [&](int i, int j, size_t& overlap) {
    overlap = intersection_count(dilate(pre[i], 1), dilate(pre[j], 1));
    if (intersection_count(erode(pre[i], 1), erode(pre[j], 1)) == 0 &&
        overlap <= annulus_px / 1000)
      return DisjointVerdict::Disjoint;
    if (overlap > annulus_px / 1000) return DisjointVerdict::Overlapping;
    return DisjointVerdict::Inconclusive;
  };
  size_t o12, o13, o23;
  DisjointVerdict d12 = pair_verdict(0, 1, o12);
  DisjointVerdict d13 = pair_verdict(0, 2, o13);
  DisjointVerdict d23 = pair_verdict(1, 2, o23);
  res.pair_overlap_pixels = {o12, o13, o23};

  auto dj = [](DisjointVerdict v) { return v == DisjointVerdict::Disjoint; };
  auto ov = [](DisjointVerdict v) { return v == DisjointVerdict::Overlapping; };
  if (dj(d12) && dj(d13) && dj(d23))
    res.which_case = 1;
  else if (dj(d12) && dj(d13) && ov(d23))
    res.which_case = 2;
  else if (dj(d13) && dj(d23) && ov(d12))
    res.which_case = 3;
  else
    throw TrichotomyViolation("no trichotomy pattern matched (grid too coarse?)");
  return res;
}

KernelProbeResult kernel_julia_probe(const GeneratorSystem& sys,
                                     const std::vector<cplx>& julia_points, int depth) {
  KernelProbeResult res;
  res.total = static_cast<int>(julia_points.size());
  std::optional<RegionMask> interior;
  if (sys.trap_mask) interior = erode(*sys.trap_mask, 2);
  auto fatou_witness = [&](cplx z) {
    if (std::abs(z) > sys.escape_radius) return true;
    if (interior && interior->contains(z)) return true;
    if (sys.trap_disk && std::abs(z - sys.trap_disk->center) < 0.9 * sys.trap_disk->radius)
      return true;
    return false;
  };
  for (cplx z0 : julia_points) {
    bool found = false;
    std::vector<cplx> layer{z0};
    for (int d = 0; d < depth && !found; ++d) {
      std::vector<cplx> next;
      next.reserve(layer.size() * sys.m());
      for (cplx z : layer)
        for (int j = 0; j < sys.m() && !found; ++j) {
          cplx w = sys.generators[j](z);
          if (fatou_witness(w)) {
            found = true;
            break;
          }
          next.push_back(w);
        }
      layer = std::move(next);
      if (layer.size() > 200000) layer.resize(200000);  // budget guard
    }
    if (found) ++res.witnessed;
  }
  res.fraction = res.total ? static_cast<double>(res.witnessed) / res.total : 0.0;
  return res;
}

GeneratorSystem canonicalize_two_gen(const GeneratorSystem& sys, const GridSpec& grid,
                                     int julia_n_max) {
  if (sys.m() != 2) return sys;
  RegionMask j1 = dilate(julia_mask(sys.generators[0], grid, julia_n_max,
                                    escape_radius({sys.generators[0]})), 2);
  RegionMask j2 = dilate(julia_mask(sys.generators[1], grid, julia_n_max,
                                    escape_radius({sys.generators[1]})), 2);
  if (surrounding_compare(j1, j2) == Surround::BLess) {
    GeneratorSystem out = sys;
    std::swap(out.generators[0], out.generators[1]);
    std::swap(out.weights[0], out.weights[1]);
    return out;
  }
  return sys;
}

MonotonicityReport monotonicity_audit(const GeneratorSystem& sys, const ScalarField& T,
                                      const std::vector<RegionMask>& annuli) {
  (void)sys;
  MonotonicityReport rep;
  for (const auto& a : annuli) {
    AnnulusStat st;
    double sum = 0.0;
    for (size_t i = 0; i < a.bits.size(); ++i)
      if (a.bits[i]) {
        sum += T.values[i];
        ++st.pixels;
      }
    if (st.pixels == 0) throw OrderViolation("empty annulus mask");
    st.mean = sum / st.pixels;
    st.stderr_mean =
        std::sqrt(0.25 / std::max(1, T.meta.samples) / static_cast<double>(st.pixels));
    rep.stats.push_back(st);
  }
  for (size_t k = 0; k + 1 < annuli.size(); ++k) {
    if (surrounding_compare(annuli[k], annuli[k + 1]) != Surround::ALess)
      throw OrderViolation("annuli " + std::to_string(k) + "," + std::to_string(k + 1) +
                           " not in surrounding order");
    double gap = rep.stats[k + 1].mean - rep.stats[k].mean;
    if (gap <= 3.0 * (rep.stats[k].stderr_mean + rep.stats[k + 1].stderr_mean))
      throw OrderViolation("means not strictly increasing at pair " + std::to_string(k));
  }
  rep.strictly_increasing = true;
  return rep;
}

}  // namespace coliseum
