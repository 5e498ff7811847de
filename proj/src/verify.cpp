#include "coliseum/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coliseum/affine.hpp"
#include "coliseum/config.hpp"
#include "coliseum/errors.hpp"
#include "coliseum/field_engine.hpp"
#include "coliseum/symbolic.hpp"
#include "coliseum/system.hpp"
#include "coliseum/word.hpp"

namespace coliseum {
namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Example system: h1 = (z^2-1)^2, h2 = z^4/16, p = (1/2, 1/2).
struct Fixture {
  VerifyOptions opt;
  GridSpec grid;
  int N = 2000, n_max = 300;
  uint64_t seed = 7;
  Polynomial h1, h2, h3;
  GeneratorSystem sys;  // trap = certified K(h1) mask
  RegionMask k1, k2;
  TrapCertificate cert;
  double geometry_seconds = 0.0;
  bool built = false;
  ScalarField T;
  bool haveT = false;

  explicit Fixture(const VerifyOptions& o) : opt(o) {
    int G = o.quick ? 128 : 512;
    if (o.quick) N = 300;
    grid = {-2.8, 2.8, -2.8, 2.8, G, G};
    h1 = Polynomial::parse("1,0,-2,0,1");
    h2 = Polynomial::parse("0,0,0,0,0.0625");
    h3 = Polynomial::parse("0,0,0,0,0.05");
  }

  void build() {
    if (built) return;
    auto t0 = std::chrono::steady_clock::now();
    sys = build_system({h1, h2}, {0.5, 0.5});
    k1 = filled_julia_mask(h1, grid, n_max, escape_radius({h1}));
    k2 = filled_julia_mask(h2, grid, n_max, escape_radius({h2}));
    cert = certify_trap(sys, k1);
    sys.trap_mask = k1;
    geometry_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - t0).count();
    built = true;
  }

  const ScalarField& t_field() {
    build();
    if (!haveT) {
      T = render_T(sys, grid, N, n_max, seed);
      haveT = true;
    }
    return T;
  }
};

RegionMask radial_ring(const GridSpec& g, double lo, double hi) {
  RegionMask m(g);
  for (size_t i = 0; i < g.size(); ++i) {
    double r = std::abs(g.center(i));
    if (r >= lo && r <= hi) m.bits[i] = 1;
  }
  return m;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CheckResult guard(const std::string& id, const std::function<CheckResult()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {id, false, std::string("exception: ") + e.what()};
  }
}

// ---- 1: closed forms -------------------------------------------------------

CheckResult check_closed_forms(Fixture&) {
  auto u = u_exponent({4, 4}, {0.5, 0.5});
  auto d = dim_lower_bound({4, 4}, {0.5, 0.5});
  bool ok = std::abs(u.value - 0.5) <= 1e-12 && std::abs(d.value - 1.5) <= 1e-12 &&
            std::abs(u.sum_inv_deg - 0.5) <= 1e-12 && u.disjointness_regime;
  return {"1 closed-forms", ok,
          fmt("u=%.15f dim=%.15f sum_inv_deg=%.15f regime=%d", u.value, d.value,
              u.sum_inv_deg, (int)u.disjointness_regime)};
}

// ---- 2: geometry suite -----------------------------------------------------

CheckResult check_geometry(Fixture& fx) {
  auto t0 = std::chrono::steady_clock::now();
  fx.build();
  RegionMask disk04 = disk_mask(fx.grid, {cplx(0, 0), 0.4});
  bool disk_in = subset_of(disk04, fx.k1);
  RegionMask annulus = mask_minus(fx.k2, disk04);
  DisjointReport rep = preimage_disjointness(fx.sys, annulus, fx.grid);
  double secs = fx.geometry_seconds +
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  bool ok = fx.cert.ok && disk_in && rep.verdict == DisjointVerdict::Disjoint &&
            secs < 60.0;
  return {"2 geometry", ok,
          fmt("trap_cert=%d margin=%.1fpx disk04_in_K1=%d preimage=%s "
              "union_inside=%d overlap=%zu/%zu px elapsed=%.1fs",
              (int)fx.cert.ok, fx.cert.margin, (int)disk_in, to_string(rep.verdict),
              (int)rep.union_inside, rep.overlap_pixels, rep.annulus_pixels, secs)};
}

// ---- 3: T-field boundary values --------------------------------------------

CheckResult check_boundary_values(Fixture& fx) {
  const ScalarField& T = fx.t_field();
  RegionMask interior = erode(fx.k1, 2);
  std::vector<size_t> inner;
  for (size_t i = 0; i < interior.bits.size(); ++i)
    if (interior.at(i)) inner.push_back(i);
  int bad_trap = 0, took = 0;
  for (size_t k = 0; k < 100 && !inner.empty(); ++k) {
    size_t i = inner[(k * inner.size()) / 100];
    ++took;
    if (T.values[i] != 0.0 || T.undecided[i] != 0.0) ++bad_trap;
  }
  int bad_escape = 0;
  double R = fx.sys.escape_radius;
  for (int k = 0; k < 100; ++k) {
    double th = 2.0 * std::numbers::pi * k / 100.0;
    cplx z = (R + 1.0) * cplx(std::cos(th), std::sin(th));
    SampleCounts c = estimate_T_point(fx.sys, z, fx.N, fx.n_max, fx.seed, 1u << 20);
    if (c.escaped != fx.N) ++bad_escape;
  }
  double zstar = std::cbrt(16.0);
  SampleCounts c = estimate_T_point(fx.sys, cplx(zstar, 0.0), fx.N, fx.n_max,
                                    fx.seed, 2u << 20);
  double t_star = (double)c.escaped / fx.N;
  bool ok = took == 100 && bad_trap == 0 && bad_escape == 0 && t_star >= 0.95;
  return {"3 boundary-values", ok,
          fmt("trap_pts=%d bad_trap=%d bad_escape=%d T(16^(1/3))=%.4f", took,
              bad_trap, bad_escape, t_star)};
}

// ---- 4: fixed-point residual + operator limit ------------------------------

CheckResult check_fixed_point(Fixture& fx) {
  const ScalarField& T = fx.t_field();
  ScalarField M = operator_apply(fx.sys, T, 1.0);
  int w = fx.grid.width, h = fx.grid.height;
  double maxjump = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      size_t i = (size_t)y * w + x;
      if (x + 1 < w) maxjump = std::max(maxjump, std::abs(T.values[i] - T.values[i + 1]));
      if (y + 1 < h) maxjump = std::max(maxjump, std::abs(T.values[i] - T.values[i + w]));
    }
  double resid = 0.0;
  for (size_t i = 0; i < T.values.size(); ++i)
    if (T.undecided[i] < 0.01)
      resid = std::max(resid, std::abs(M.values[i] - T.values[i]));
  double thr = 3.0 * (std::sqrt(0.25 / fx.N) + maxjump);

  ScalarField phi(fx.grid);
  for (size_t i = 0; i < phi.values.size(); ++i)
    phi.values[i] = 1.0 / (1.0 + std::norm(fx.grid.center(i)));
  int steps = fx.opt.quick ? 30 : 60;
  OperatorLimitReport rep =
      operator_limit_check(fx.sys, phi, 0.0, T, cplx(0, 0), steps, 0.0);
  bool ok = resid <= thr && rep.final_error <= 0.05;
  return {"4 fixed-point", ok,
          fmt("residual=%.4f thr=%.4f maxjump=%.4f limit_final=%.4f decreasing=%d",
              resid, thr, maxjump, rep.final_error, (int)rep.eventually_decreasing)};
}

// ---- 5: closed form vs Monte Carlo on component clouds ---------------------

CheckResult check_word_values(Fixture& fx) {
  fx.build();
  const std::vector<std::string> words = {"(1)",  "(2)",   "2(1)",  "1(2)",  "(12)",
                                          "(21)", "(112)", "(221)", "1(12)", "2(21)"};
  int NW = fx.opt.quick ? 500 : 4000;
  int max_pts = fx.opt.quick ? 30 : 120;
  std::string detail;
  bool ok = true;
  for (size_t wi = 0; wi < words.size(); ++wi) {
    Word w = Word::parse(words[wi]);
    double t = t_value_of_word(0.5, 0.5, w);
    ComponentDescriptor comp = component_of_word(fx.sys, w, 400, fx.seed + wi);
    std::vector<cplx> pts;
    if (comp.cloud.empty()) {
      ok = false;
      detail += words[wi] + ":empty-cloud ";
      continue;
    }
    for (int k = 0; k < max_pts; ++k)
      pts.push_back(comp.cloud[(k * comp.cloud.size()) / max_pts]);
    std::vector<double> est;
    for (size_t k = 0; k < pts.size(); ++k) {
      SampleCounts c = estimate_T_point(fx.sys, pts[k], NW, fx.n_max, fx.seed,
                                        (3u << 20) + wi * 1000 + k);
      est.push_back((double)c.escaped / NW);
    }
    double mean = 0.0;
    for (double e : est) mean += e;
    mean /= est.size();
    double var = 0.0;
    for (double e : est) var += (e - mean) * (e - mean);
    var /= std::max<size_t>(1, est.size() - 1);
    double se = std::sqrt(var / est.size()) +
                std::sqrt(0.25 / ((double)NW * est.size()));
    bool word_ok = std::abs(t - mean) <= 3.0 * se;
    bool gap = (words[wi] == "2(1)" || words[wi] == "1(2)");
    if (gap) word_ok = word_ok && std::abs(mean - 0.5) <= 0.03;
    ok = ok && word_ok;
    detail += fmt("%s:t=%.4f mc=%.4f se=%.4f%s ", words[wi].c_str(), t, mean, se,
                  word_ok ? "" : "(FAIL)");
  }
  return {"5 word-values", ok, detail};
}

// ---- 6: order audit --------------------------------------------------------

CheckResult check_order(Fixture& fx) {
  const ScalarField& T = fx.t_field();
  std::vector<RegionMask> annuli = {
      radial_ring(fx.grid, 0.60, 0.80), radial_ring(fx.grid, 1.00, 1.30),
      radial_ring(fx.grid, 1.90, 2.10), radial_ring(fx.grid, 2.35, 2.50)};
  std::string detail;
  bool ok = true;
  try {
    MonotonicityReport rep = monotonicity_audit(fx.sys, T, annuli);
    ok = rep.strictly_increasing;
    for (const auto& s : rep.stats) detail += fmt("%.4f(±%.4f) ", s.mean, s.stderr_mean);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("audit: ") + e.what() + " ";
  }
  std::vector<Word> inv = invert_t(0.5, 0.5, 0.5, 64);
  Word w12 = Word::parse("1(2)").canonical(), w21 = Word::parse("2(1)").canonical();
  bool pair_ok = inv.size() == 2 &&
                 ((inv[0].canonical() == w12 && inv[1].canonical() == w21) ||
                  (inv[0].canonical() == w21 && inv[1].canonical() == w12));
  if (!pair_ok) {
    detail += "invert_t(1/2): ";
    for (const auto& w : inv) detail += w.to_string() + " ";
  } else {
    detail += "invert_t(1/2)=ok";
  }
  return {"6 order-audit", ok && pair_ok, detail};
}

// ---- 7: 1-D staircase oracles ----------------------------------------------

double cantor_oracle(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double v = 0.0, w = 0.5;
  for (int i = 0; i < 60; ++i) {
    x *= 3.0;
    int d = std::min(2, (int)std::floor(x));
    x -= d;
    if (d == 1) {
      v += w;
      return v;
    }
    v += (d / 2) * w;
    w *= 0.5;
  }
  return v;
}

CheckResult check_staircase(Fixture&) {
  std::vector<AffineMap> cantor = {{3.0, 0.0}, {3.0, -2.0}};
  std::vector<AffineMap> binary = {{2.0, 0.0}, {2.0, -1.0}};
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    double x = uni(rng);
    double got = staircase_T(cantor, {0.5, 0.5}, x, StaircaseMode::ExactRecursion);
    worst = std::max(worst, std::abs(got - cantor_oracle(x)));
  }
  double worst_id = 0.0;
  for (int k = 0; k <= 128; ++k) {
    double x = k / 128.0;
    double got = staircase_T(binary, {0.5, 0.5}, x, StaircaseMode::ExactRecursion);
    worst_id = std::max(worst_id, std::abs(got - x));
  }
  double worst_half = 0.0;
  for (int ia = 1; ia <= 9; ++ia) {
    double a = ia / 10.0;
    double got = staircase_T(binary, {a, 1.0 - a}, 0.5, StaircaseMode::ExactRecursion);
    worst_half = std::max(worst_half, std::abs(got - a));
  }
  bool mc_ok = true;
  std::string mc_detail;
  StaircaseParams mp;
  mp.mc_samples = 40000;
  mp.seed = 77;
  for (double x : {0.1, 0.25, 0.5, 0.77, 0.9}) {
    double ex = staircase_T(cantor, {0.5, 0.5}, x, StaircaseMode::ExactRecursion);
    double mc = staircase_T(cantor, {0.5, 0.5}, x, StaircaseMode::MonteCarlo, mp);
    double se = std::sqrt(std::max(ex * (1 - ex), 1e-6) / mp.mc_samples);
    if (std::abs(mc - ex) > 3.0 * se) {
      mc_ok = false;
      mc_detail += fmt("x=%.2f ex=%.4f mc=%.4f ", x, ex, mc);
    }
  }
  bool ok = worst <= 1e-9 && worst_id <= 1e-9 && worst_half <= 1e-9 && mc_ok;
  return {"7 staircase-oracles", ok,
          fmt("cantor_err=%.2e identity_err=%.2e half_err=%.2e mc=%s %s", worst,
              worst_id, worst_half, mc_ok ? "ok" : "FAIL", mc_detail.c_str())};
}

// ---- 8: Hölder exponents ---------------------------------------------------

CheckResult check_holder(Fixture& fx) {
  fx.build();
  int G = fx.opt.quick ? 256 : 1024;
  int N = fx.opt.quick ? 500 : 4000;
  GridSpec grid = {-2.8, 2.8, -2.8, 2.8, G, G};
  ScalarField T = render_T(fx.sys, grid, N, fx.n_max, fx.seed);
  std::vector<cplx> pts = sample_lambda_typical(fx.sys, 50, 40, 99);
  auto radii = dyadic_radii(grid);
  std::vector<double> exps;
  int lt1 = 0;
  for (cplx z0 : pts) {
    HolderEstimate e = empirical_holder(T, z0, radii);
    if (!e.reliable) continue;
    exps.push_back(e.exponent);
    if (e.exponent < 1.0) ++lt1;
  }
  double med = 0.0, frac = 0.0;
  if (!exps.empty()) {
    std::vector<double> s = exps;
    std::sort(s.begin(), s.end());
    med = s[s.size() / 2];
    frac = (double)lt1 / exps.size();
  }

  GridSpec cg = {-1.0, 1.0, -1.0, 1.0, 512, 512};
  ScalarField lin(cg), root(cg);
  lin.meta.samples = root.meta.samples = 1000000000;  // negligible noise floor
  cplx zc = cg.center(256, 256);  // singularity on an exact pixel center
  for (size_t i = 0; i < cg.size(); ++i) {
    lin.values[i] = (cg.center(i) - zc).real();
    root.values[i] = std::sqrt(std::abs(cg.center(i) - zc));
  }
  auto cr = dyadic_radii(cg);
  HolderEstimate e1 = empirical_holder(lin, zc, cr);
  HolderEstimate eh = empirical_holder(root, zc, cr);
  bool ok = !exps.empty() && med >= 0.3 && med <= 0.7 && frac >= 0.6 &&
            std::abs(e1.exponent - 1.0) <= 0.05 && std::abs(eh.exponent - 0.5) <= 0.05;
  return {"8 holder", ok,
          fmt("reliable=%zu/%zu median=%.3f frac_lt1=%.2f calib_lin=%.3f calib_sqrt=%.3f",
              exps.size(), pts.size(), med, frac, e1.exponent, eh.exponent)};
}

// ---- 9: kernel Julia probe -------------------------------------------------

CheckResult check_kernel(Fixture& fx) {
  fx.build();
  std::vector<cplx> cloud =
      julia_backward_cloud(fx.sys, cplx(std::cbrt(16.0), 0.0), 400, fx.seed);
  if (cloud.size() > 200) cloud.resize(200);
  KernelProbeResult main = kernel_julia_probe(fx.sys, cloud, 20);

  GeneratorSystem ctl = build_system({Polynomial::parse("0,0,1")}, {1.0});
  ctl.trap_disk = Disk{cplx(0, 0), 0.5};
  std::vector<cplx> circle;
  for (int k = 0; k < 200; ++k) {
    double th = 2.0 * std::numbers::pi * k / 200.0;
    circle.push_back(cplx(std::cos(th), std::sin(th)));
  }
  KernelProbeResult control = kernel_julia_probe(ctl, circle, 20);
  bool ok = main.fraction == 1.0 && control.fraction == 0.0;
  return {"9 kernel-probe", ok,
          fmt("example=%.3f (%d/%d) control=%.3f (%d/%d)", main.fraction,
              main.witnessed, main.total, control.fraction, control.witnessed,
              control.total)};
}

// ---- 10: 3-generator trichotomy --------------------------------------------

CheckResult check_trichotomy(Fixture& fx) {
  fx.build();
  GeneratorSystem sys3 =
      build_system({fx.h1, fx.h2, fx.h3}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  // J(G)-proxy: non-constancy band of the rendered T field; a filled-set
  // difference is far too fat and manufactures preimage overlaps
  auto band_proxy = [&](GeneratorSystem s, const GridSpec& g, int N) {
    s.trap_mask = filled_julia_mask(s.generators[0], g, 300,
                                    escape_radius({s.generators[0]}));
    ScalarField T = render_T(s, g, N, 200, fx.seed);
    return classify_julia(s, T, 1);
  };
  auto run_at = [&](int G) {
    GridSpec g = {-2.9, 2.9, -2.9, 2.9, G, G};
    RegionMask ann = band_proxy(sys3, g, fx.opt.quick ? 200 : 500);
    return classify_3gen(sys3, ann, g);
  };
  TrichotomyResult lo = run_at(fx.opt.quick ? 128 : 256);
  TrichotomyResult hi = run_at(fx.opt.quick ? 256 : 512);
  bool stable = lo.which_case == hi.which_case && lo.which_case != 0;

  // widely separated scalings give the all-disjoint case
  GeneratorSystem far3 = build_system({fx.h1, Polynomial::parse("0,0,0,0,0.0078125"),
                                       Polynomial::parse("0,0,0,0,0.0001220703125")},
                                      {1.0 / 3, 1.0 / 3, 1.0 / 3});
  GridSpec gf = {-21.0, 21.0, -21.0, 21.0, 512, 512};
  RegionMask annf = band_proxy(far3, gf, fx.opt.quick ? 200 : 500);
  TrichotomyResult c1 = classify_3gen(far3, annf, gf);
  bool case1_ok = c1.which_case == 1 && c1.order.size() == 3 && c1.order[0] == 0 &&
                  c1.order[1] == 1 && c1.order[2] == 2;
  bool ok = stable && case1_ok;
  return {"10 trichotomy", ok,
          fmt("spec_case=%d/%d (lo/hi) far_case=%d far_order=%d%d%d overlaps=%zu,%zu,%zu",
              lo.which_case, hi.which_case, c1.which_case,
              c1.order.size() > 0 ? c1.order[0] : -1,
              c1.order.size() > 1 ? c1.order[1] : -1,
              c1.order.size() > 2 ? c1.order[2] : -1,
              c1.pair_overlap_pixels.size() > 0 ? c1.pair_overlap_pixels[0] : 0,
              c1.pair_overlap_pixels.size() > 1 ? c1.pair_overlap_pixels[1] : 0,
              c1.pair_overlap_pixels.size() > 2 ? c1.pair_overlap_pixels[2] : 0)};
}

// ---- 11: determinism across thread counts ----------------------------------

CheckResult check_determinism(Fixture& fx) {
  fx.build();
  GridSpec g = {-2.8, 2.8, -2.8, 2.8, 128, 128};
  std::vector<std::string> images;
  for (int threads : {1, 4, 8}) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    ScalarField f = render_T(fx.sys, g, 200, 200, fx.seed);
    std::string path = fx.opt.scratch_dir + "/det_" + std::to_string(threads) + ".pgm";
    write_pgm16(path, g, f.values);
    images.push_back(slurp(path));
  }
#ifdef _OPENMP
  omp_set_num_threads(omp_get_num_procs());
#endif
  ScalarField serial = render_T_serial(fx.sys, g, 200, 200, fx.seed);
  std::string spath = fx.opt.scratch_dir + "/det_serial.pgm";
  write_pgm16(spath, g, serial.values);
  std::string simg = slurp(spath);
  bool ok = !images[0].empty() && images[0] == images[1] && images[0] == images[2] &&
            images[0] == simg;
  return {"11 determinism", ok,
          fmt("bytes=%zu t1==t4:%d t1==t8:%d t1==serial:%d", images[0].size(),
              (int)(images[0] == images[1]), (int)(images[0] == images[2]),
              (int)(images[0] == simg))};
}

}  // namespace

std::vector<CheckResult> run_acceptance(const VerifyOptions& opt) {
  Fixture fx(opt);
  std::vector<CheckResult> out;
  auto run = [&](const std::string& id, const std::function<CheckResult()>& fn) {
    out.push_back(guard(id, fn));
    if (opt.progress) {
      const CheckResult& r = out.back();
      fprintf(stderr, "[%s] %s — %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
              r.detail.c_str());
    }
  };
  if (opt.one_d_only) {
    run("7 staircase-oracles", [&] { return check_staircase(fx); });
    return out;
  }
  run("1 closed-forms", [&] { return check_closed_forms(fx); });
  run("2 geometry", [&] { return check_geometry(fx); });
  run("3 boundary-values", [&] { return check_boundary_values(fx); });
  run("4 fixed-point", [&] { return check_fixed_point(fx); });
  run("5 word-values", [&] { return check_word_values(fx); });
  run("6 order-audit", [&] { return check_order(fx); });
  run("7 staircase-oracles", [&] { return check_staircase(fx); });
  run("8 holder", [&] { return check_holder(fx); });
  run("9 kernel-probe", [&] { return check_kernel(fx); });
  run("10 trichotomy", [&] { return check_trichotomy(fx); });
  run("11 determinism", [&] { return check_determinism(fx); });
  return out;
}

}  // namespace coliseum
