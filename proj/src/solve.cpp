#include "dgp/solve.hpp"

#include <Eigen/SparseCholesky>
#include <chrono>
#include <cmath>

#include "dgp/errors.hpp"

namespace dgp {

namespace {

double rel_residual(const SystemMatrix& a, const std::vector<double>& x,
                    const std::vector<double>& b) {
  const std::vector<double> ax = a.multiply(x);
  double rr = 0.0, bb = 0.0;
  for (size_t i = 0; i < b.size(); ++i) {
    rr += (ax[i] - b[i]) * (ax[i] - b[i]);
    bb += b[i] * b[i];
  }
  return bb > 0.0 ? std::sqrt(rr / bb) : std::sqrt(rr);
}

std::vector<double> solve_direct(const SystemMatrix& a, const std::vector<double>& b) {
  Eigen::SparseMatrix<double> m(a.n, a.n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.vals.size());
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      trips.emplace_back(i, a.col_idx[k], a.vals[k]);
  m.setFromTriplets(trips.begin(), trips.end());

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  llt.compute(m);
  if (llt.info() != Eigen::Success)
    throw DgError(ErrorCategory::indefinite_system,
                  "Cholesky factorization failed: system not positive definite "
                  "(penalty parameter below the coercivity threshold?)");
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), a.n);
  const Eigen::VectorXd x = llt.solve(rhs);
  return std::vector<double>(x.data(), x.data() + a.n);
}

std::vector<double> solve_cg(const SystemMatrix& a, const std::vector<double>& b, double tol,
                             int& iterations) {
  const int n = a.n;
  std::vector<double> diag(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
      if (a.col_idx[k] == i && a.vals[k] != 0.0) diag[i] = a.vals[k];

  std::vector<double> x(n, 0.0), r = b, z(n), p(n);
  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) {
    iterations = 0;
    return x;
  }

  for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = 0.0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];

  const long cap = 20L * n;
  for (long it = 1; it <= cap; ++it) {
    const std::vector<double> ap = a.multiply(p);
    double pap = 0.0;
    for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0.0))
      throw DgError(ErrorCategory::indefinite_system,
                    "CG breakdown: non-positive curvature (penalty parameter below the "
                    "coercivity threshold?)");
    const double alpha = rz / pap;
    double rnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      rnorm += r[i] * r[i];
    }
    if (std::sqrt(rnorm) <= tol * bnorm) {
      iterations = static_cast<int>(it);
      return x;
    }
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) rz_new += r[i] * z[i];
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw DgError(ErrorCategory::indefinite_system,
                "CG did not converge within 20 n iterations");
}

}  // namespace

std::pair<std::vector<double>, SolveReport> solve(const SystemMatrix& a,
                                                  const std::vector<double>& b, double tol,
                                                  SolveMethod method) {
  if (static_cast<int>(b.size()) != a.n)
    throw DgError(ErrorCategory::invalid_argument, "right-hand side dimension mismatch");
  const auto t0 = std::chrono::steady_clock::now();

  SolveReport report;
  report.method = method;
  std::vector<double> x;
  if (method == SolveMethod::direct) {
    x = solve_direct(a, b);
  } else {
    x = solve_cg(a, b, tol, report.iterations);
  }
  report.rel_residual = rel_residual(a, x, b);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(x), report};
}

}  // namespace dgp
