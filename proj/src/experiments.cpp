#include "dgp/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "dgp/assembly.hpp"
#include "dgp/errors.hpp"
#include "dgp/solve.hpp"

namespace dgp {

const char* to_string(Domain d) { return d == Domain::square ? "square" : "lshape"; }

namespace {

Mesh build_domain(Domain d, int n) {
  return d == Domain::square ? build_square_mesh(n) : build_lshape_mesh(n);
}

struct ProblemData {
  ScalarField exact;
  ScalarField load;
};

ProblemData problem_data(Problem p) {
  switch (p) {
    case Problem::manufactured: return {fields::sine_product(), fields::sine_product_load()};
    case Problem::linear: return {fields::linear_sum(), fields::constant(0.0)};
    case Problem::corner: return {fields::corner_singular(), fields::constant(0.0)};
  }
  throw DgError(ErrorCategory::invalid_argument, "unknown problem");
}

std::vector<double> solve_problem(const Mesh& m, const DgSpace& space, const ScalarField& f,
                                  const ScalarField& g, double sigma) {
  const SystemMatrix a = assemble_matrix(m, space, sigma);
  const std::vector<double> b = assemble_rhs(m, space, f, g, sigma);
  return solve(a, b).first;
}

}  // namespace

ExtremaReport run_wmp(Domain domain, int n, int r, double sigma) {
  const Mesh m = build_domain(domain, n);
  const DgSpace space = make_space(m, r);
  const std::vector<double> u =
      solve_problem(m, space, fields::constant(0.0), fields::cosine_product(), sigma);

  const Extrema omega = global_extrema(m, space, u);
  const Extrema bnd = boundary_extrema(m, space, u);
  ExtremaReport rep;
  rep.domain = to_string(domain);
  rep.h = mesh_metrics(m).h;
  rep.r = r;
  rep.sigma = sigma;
  rep.min_omega = omega.min_value;
  rep.max_omega = omega.max_value;
  rep.min_boundary = bnd.min_value;
  rep.max_boundary = bnd.max_value;
  return rep;
}

double fitted_rate_last3(const std::vector<ConvergenceRow>& rows) {
  const size_t k = std::min<size_t>(3, rows.size());
  if (k < 2) return std::nan("");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = rows.size() - k; i < rows.size(); ++i) {
    const double x = std::log2(rows[i].h);
    const double y = std::log2(rows[i].linf);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(k);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

ConvergenceTable refinement_study(Domain domain, int r, int levels, double sigma, Problem problem,
                                  const Rect* subdomain) {
  if (levels < 3)
    throw DgError(ErrorCategory::invalid_argument, "convergence study needs levels >= 3");
  const ProblemData data = problem_data(problem);

  ConvergenceTable table;
  Mesh m = build_domain(domain, domain == Domain::square ? 4 : 2);
  for (int level = 1; level <= levels; ++level) {
    if (level > 1) m = refine_uniform(m);
    const DgSpace space = make_space(m, r);
    const std::vector<double> u = solve_problem(m, space, data.load, data.exact, sigma);
    const ErrorReport err = compute_error_report(m, space, u, data.exact, subdomain);

    ConvergenceRow row;
    row.level = level;
    row.h = err.h;
    row.dofs = err.dofs;
    row.linf = err.linf;
    row.l2 = err.l2;
    row.broken_h1 = err.broken_h1;
    row.linf_subdomain = err.linf_subdomain;
    row.rate_linf = table.rows.empty() ? std::nan("")
                                       : std::log2(table.rows.back().linf / row.linf);
    table.rows.push_back(row);
  }
  table.asymptotic_rate_linf = fitted_rate_last3(table.rows);
  return table;
}

}  // namespace

ConvergenceTable run_convergence(Domain domain, int r, int levels, double sigma,
                                 Problem problem) {
  return refinement_study(domain, r, levels, sigma, problem, nullptr);
}

ConvergenceTable run_interior(int r, int levels, double sigma, Rect subdomain, Problem problem) {
  if (subdomain.x1 <= subdomain.x0 || subdomain.y1 <= subdomain.y0)
    throw DgError(ErrorCategory::invalid_argument, "empty subdomain rectangle");
  if (problem == Problem::corner) {
    // The interior estimate needs the window clear of the singularity.
    const double dx = std::max({subdomain.x0, -subdomain.x1, 0.0});
    const double dy = std::max({subdomain.y0, -subdomain.y1, 0.0});
    if (std::hypot(dx, dy) < 0.2)
      throw DgError(ErrorCategory::invalid_argument,
                    "corner study requires the subdomain at distance >= 0.2 from the origin");
  }
  return refinement_study(Domain::lshape, r, levels, sigma, problem, &subdomain);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DgError(ErrorCategory::io_error, "cannot open " + path + " for writing");
  return f;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void emit_csv(const ExtremaReport& report, const std::string& path) {
  auto f = open_out(path);
  f << "domain,h,r,sigma,min_omega,min_boundary,max_omega,max_boundary\n";
  f << report.domain << "," << fmt(report.h) << "," << report.r << "," << fmt(report.sigma) << ","
    << fmt(report.min_omega) << "," << fmt(report.min_boundary) << "," << fmt(report.max_omega)
    << "," << fmt(report.max_boundary) << "\n";
  if (!f) throw DgError(ErrorCategory::io_error, "write failed: " + path);
}

void emit_csv(const ConvergenceTable& table, const std::string& path) {
  auto f = open_out(path);
  bool with_sub = false;
  for (const auto& row : table.rows) with_sub = with_sub || row.linf_subdomain.has_value();
  f << "level,h,dofs,linf,l2,brokenH1,rate_linf";
  if (with_sub) f << ",linf_subdomain";
  f << "\n";
  for (const auto& row : table.rows) {
    f << row.level << "," << fmt(row.h) << "," << row.dofs << "," << fmt(row.linf) << ","
      << fmt(row.l2) << "," << fmt(row.broken_h1) << ",";
    if (!std::isnan(row.rate_linf)) f << fmt(row.rate_linf);
    if (with_sub) f << "," << (row.linf_subdomain ? fmt(*row.linf_subdomain) : "");
    f << "\n";
  }
  if (!f) throw DgError(ErrorCategory::io_error, "write failed: " + path);
}

void emit_plotdata(const ConvergenceTable& table, const std::string& path) {
  auto f = open_out(path);
  char buf[96];
  for (const auto& row : table.rows) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", std::log10(row.h), std::log10(row.linf));
    f << buf;
  }
  std::snprintf(buf, sizeof buf, "slope %.17g\n", table.asymptotic_rate_linf);
  f << buf;
  if (!f) throw DgError(ErrorCategory::io_error, "write failed: " + path);
}

}  // namespace dgp
