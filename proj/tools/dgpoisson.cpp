#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "dgp/assembly.hpp"
#include "dgp/errors.hpp"
#include "dgp/experiments.hpp"
#include "dgp/mesh_io.hpp"
#include "dgp/solve.hpp"

namespace {

dgp::Domain parse_domain(const std::string& s) {
  if (s == "square") return dgp::Domain::square;
  if (s == "lshape") return dgp::Domain::lshape;
  throw dgp::DgError(dgp::ErrorCategory::invalid_argument, "unknown domain: " + s);
}

dgp::Problem parse_problem(const std::string& s) {
  if (s == "manufactured") return dgp::Problem::manufactured;
  if (s == "linear") return dgp::Problem::linear;
  if (s == "corner") return dgp::Problem::corner;
  throw dgp::DgError(dgp::ErrorCategory::invalid_argument, "unknown problem: " + s);
}

dgp::Rect parse_rect(const std::string& s) {
  dgp::Rect r{};
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &r.x0, &r.y0, &r.x1, &r.y1) != 4)
    throw dgp::DgError(dgp::ErrorCategory::invalid_argument,
                       "--rect expects x0,y0,x1,y1");
  return r;
}

double default_sigma(double sigma, int degree) {
  return sigma > 0.0 ? sigma : 10.0 * degree * degree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIPDG Poisson solver: weak-maximum-principle and L-infinity convergence studies"};
  app.require_subcommand(1);

  std::string domain = "square", problem = "manufactured", rect_spec, csv_path, out_path,
              plot_path, dump_matrix_path;
  int n = 8, degree = 1, levels = 5;
  double sigma = 0.0;  // 0 = default 10 r^2

  auto* mesh_cmd = app.add_subcommand("mesh", "generate a mesh and write it as text");
  mesh_cmd->add_option("--domain", domain, "square|lshape")->capture_default_str();
  mesh_cmd->add_option("--n", n, "grid resolution per unit block")->capture_default_str();
  mesh_cmd->add_option("--out", out_path, "output path")->required();

  auto* wmp_cmd = app.add_subcommand("wmp", "discrete harmonic extrema (f=0, g=cos pix cos piy)");
  wmp_cmd->add_option("--domain", domain, "square|lshape")->capture_default_str();
  wmp_cmd->add_option("--n", n, "grid resolution")->capture_default_str();
  wmp_cmd->add_option("--degree", degree, "polynomial degree (1 or 2)")->capture_default_str();
  wmp_cmd->add_option("--sigma", sigma, "penalty parameter (default 10 r^2)");
  wmp_cmd->add_option("--csv", csv_path, "CSV output path");
  wmp_cmd->add_option("--dump-matrix", dump_matrix_path, "write the system matrix as i j value triplets");

  auto* conv_cmd = app.add_subcommand("convergence", "refinement study with observed rates");
  conv_cmd->add_option("--domain", domain, "square|lshape")->capture_default_str();
  conv_cmd->add_option("--degree", degree, "polynomial degree")->capture_default_str();
  conv_cmd->add_option("--levels", levels, "number of refinement levels (>= 3)")
      ->capture_default_str();
  conv_cmd->add_option("--sigma", sigma, "penalty parameter (default 10 r^2)");
  conv_cmd->add_option("--csv", csv_path, "CSV output path");
  conv_cmd->add_option("--problem", problem, "manufactured|linear|corner")->capture_default_str();
  conv_cmd->add_option("--plot", plot_path, "log10-log10 plot data output path");

  auto* int_cmd = app.add_subcommand("interior", "L-shape interior vs global L-infinity study");
  int_cmd->add_option("--degree", degree, "polynomial degree")->capture_default_str();
  int_cmd->add_option("--levels", levels, "number of refinement levels (>= 3)")
      ->capture_default_str();
  int_cmd->add_option("--sigma", sigma, "penalty parameter (default 10 r^2)");
  int_cmd->add_option("--rect", rect_spec, "subdomain rectangle x0,y0,x1,y1")
      ->default_val("-0.75,0.25,-0.25,0.75");
  int_cmd->add_option("--csv", csv_path, "CSV output path");
  int_cmd->add_option("--problem", problem, "corner|manufactured")->default_val("corner");
  int_cmd->add_option("--plot", plot_path, "log10-log10 plot data output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh_cmd->parsed()) {
      dgp::write_mesh(parse_domain(domain) == dgp::Domain::square ? dgp::build_square_mesh(n)
                                                                  : dgp::build_lshape_mesh(n),
                      out_path);
      return 0;
    }

    if (wmp_cmd->parsed()) {
      const double s = default_sigma(sigma, degree);
      if (!dump_matrix_path.empty()) {
        const dgp::Mesh m = parse_domain(domain) == dgp::Domain::square
                                ? dgp::build_square_mesh(n)
                                : dgp::build_lshape_mesh(n);
        const dgp::DgSpace space = dgp::make_space(m, degree);
        std::ofstream f(dump_matrix_path);
        if (!f)
          throw dgp::DgError(dgp::ErrorCategory::io_error,
                             "cannot open " + dump_matrix_path + " for writing");
        dgp::write_triplets(dgp::assemble_matrix(m, space, s), f);
      }
      const dgp::ExtremaReport rep = dgp::run_wmp(parse_domain(domain), n, degree, s);
      if (!csv_path.empty()) dgp::emit_csv(rep, csv_path);
      std::printf("domain=%s h=%.12g r=%d sigma=%.12g\n", rep.domain.c_str(), rep.h, rep.r,
                  rep.sigma);
      std::printf("min_omega=%.12g min_boundary=%.12g\n", rep.min_omega, rep.min_boundary);
      std::printf("max_omega=%.12g max_boundary=%.12g\n", rep.max_omega, rep.max_boundary);
      return 0;
    }

    if (conv_cmd->parsed()) {
      const dgp::ConvergenceTable table = dgp::run_convergence(
          parse_domain(domain), degree, levels, default_sigma(sigma, degree),
          parse_problem(problem));
      if (!csv_path.empty()) dgp::emit_csv(table, csv_path);
      if (!plot_path.empty()) dgp::emit_plotdata(table, plot_path);
      for (const auto& row : table.rows)
        std::printf("level=%d h=%.6g dofs=%d linf=%.6g l2=%.6g brokenH1=%.6g\n", row.level, row.h,
                    row.dofs, row.linf, row.l2, row.broken_h1);
      std::printf("asymptotic_rate_linf=%.6g\n", table.asymptotic_rate_linf);
      return 0;
    }

    if (int_cmd->parsed()) {
      const dgp::ConvergenceTable table =
          dgp::run_interior(degree, levels, default_sigma(sigma, degree), parse_rect(rect_spec),
                            parse_problem(problem));
      if (!csv_path.empty()) dgp::emit_csv(table, csv_path);
      if (!plot_path.empty()) dgp::emit_plotdata(table, plot_path);
      for (const auto& row : table.rows)
        std::printf("level=%d h=%.6g linf=%.6g linf_subdomain=%.6g\n", row.level, row.h, row.linf,
                    row.linf_subdomain.value_or(std::nan("")));
      return 0;
    }
  } catch (const dgp::DgError& e) {
    std::cerr << "error: " << e.category_name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
