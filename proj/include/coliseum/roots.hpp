#pragma once
#include <vector>

#include "coliseum/polynomial.hpp"

namespace coliseum {

// Aberth-Ehrlich simultaneous iteration, initial guesses on a perturbed
// circle sized by the Cauchy bound. Throws RootSolveFailure if sweeps run out.
std::vector<cplx> aberth_roots(const Polynomial& p, double tol = 1e-12,
                               int max_sweeps = 200);

// All solutions of g(z) = w.
std::vector<cplx> preimages(const Polynomial& g, cplx w, double tol = 1e-12);

}  // namespace coliseum
