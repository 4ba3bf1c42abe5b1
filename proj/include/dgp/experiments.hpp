#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgp/norms.hpp"

namespace dgp {

enum class Domain { square, lshape };
enum class Problem { manufactured, linear, corner };

const char* to_string(Domain d);

struct ExtremaReport {
  std::string domain;
  double h = 0.0;
  int r = 0;
  double sigma = 0.0;
  double min_omega = 0.0;
  double min_boundary = 0.0;
  double max_omega = 0.0;
  double max_boundary = 0.0;
};

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  int dofs = 0;
  double linf = 0.0;
  double l2 = 0.0;
  double broken_h1 = 0.0;
  double rate_linf = 0.0;  // NaN on the first row
  std::optional<double> linf_subdomain;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double asymptotic_rate_linf = 0.0;  // least-squares slope over the last 3 rows
};

// Discrete harmonic run: f = 0, g = cos(pi x) cos(pi y); reports the four
// extrema of u_h.
ExtremaReport run_wmp(Domain domain, int n, int r, double sigma);

// Refinement study on the given domain (square starts at n = 4, L-shape at
// n = 2; each level halves h). Problems: manufactured u = sin(pi x) sin(pi y),
// linear u = x + y (exactness check), corner = the singular harmonic.
ConvergenceTable run_convergence(Domain domain, int r, int levels, double sigma,
                                 Problem problem = Problem::manufactured);

// L-shape study reporting both global and subdomain L-infinity errors. The
// corner problem requires the rectangle to stay at distance >= 0.2 from the
// re-entrant corner.
ConvergenceTable run_interior(int r, int levels, double sigma, Rect subdomain,
                              Problem problem = Problem::corner);

// Least-squares slope of (log2 h, log2 linf) over the last three rows; the
// same value emit_plotdata writes.
double fitted_rate_last3(const std::vector<ConvergenceRow>& rows);

void emit_csv(const ExtremaReport& report, const std::string& path);
void emit_csv(const ConvergenceTable& table, const std::string& path);
// (log10 h, log10 linf) pairs plus the fitted slope line.
void emit_plotdata(const ConvergenceTable& table, const std::string& path);

}  // namespace dgp
