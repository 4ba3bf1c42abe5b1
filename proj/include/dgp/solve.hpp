#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dgp/assembly.hpp"

namespace dgp {

enum class SolveMethod { direct, cg };

struct SolveReport {
  SolveMethod method = SolveMethod::direct;
  int iterations = 0;  // 0 for the direct path
  double rel_residual = 0.0;
  double seconds = 0.0;
};

// Solves A u = b for the symmetric positive definite SIPDG system.
// direct: sparse Cholesky with a fixed fill-reducing ordering (default,
// tol 1e-12); cg: Jacobi-preconditioned conjugate gradients, iteration cap
// 20 n (tol 1e-10). A failed factorization or a hit iteration cap is
// reported as an indefinite-system error: the visible symptom of an
// insufficient penalty parameter.
std::pair<std::vector<double>, SolveReport> solve(const SystemMatrix& a,
                                                  const std::vector<double>& b,
                                                  double tol = 1e-12,
                                                  SolveMethod method = SolveMethod::direct);

}  // namespace dgp
