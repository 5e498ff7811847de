// Compares the OpenMP render against the serial reference and checks that the
// outputs are bit-identical.
#include <chrono>
#include <cstdio>
#include <cstring>

#include "coliseum/field_engine.hpp"
#include "coliseum/system.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace coliseum;

int main(int argc, char** argv) {
  int G = 256, N = 500;
  if (argc > 1) G = std::atoi(argv[1]);
  if (argc > 2) N = std::atoi(argv[2]);

  GridSpec grid = {-2.8, 2.8, -2.8, 2.8, G, G};
  GeneratorSystem sys = build_system({Polynomial::parse("1,0,-2,0,1"),
                                      Polynomial::parse("0,0,0,0,0.0625")},
                                     {0.5, 0.5});
  sys.trap_mask = filled_julia_mask(sys.generators[0], grid, 300, 5.0);

  auto time_it = [&](auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    ScalarField f = fn();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count();
    return std::pair<ScalarField, double>{std::move(f), s};
  };

  auto [serial, ts] = time_it([&] { return render_T_serial(sys, grid, N, 300, 7); });
  auto [parallel, tp] = time_it([&] { return render_T(sys, grid, N, 300, 7); });

  bool identical = serial.values == parallel.values &&
                   serial.undecided == parallel.undecided;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("grid %dx%d, N=%d\n", G, G, N);
  std::printf("serial:   %.3f s\n", ts);
  std::printf("parallel: %.3f s (%d threads, speedup %.2fx)\n", tp, threads,
              ts / tp);
  std::printf("outputs bit-identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
