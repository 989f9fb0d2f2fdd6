#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polydisc/cli_io.hpp"
#include "polydisc/dilation.hpp"
#include "polydisc/operator_core.hpp"
#include "polydisc/vn_variety.hpp"

namespace {

using namespace polydisc;

std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("POLYDISC_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return std::string(dir) + "/" + path;
}

void add_tolerance_flags(CLI::App* cmd, ToleranceConfig& tol) {
  cmd->add_option("--tol-contraction", tol.eps_contraction);
  cmd->add_option("--tol-commute", tol.eps_commute);
  cmd->add_option("--tol-psd", tol.eps_psd);
  cmd->add_option("--tol-sym", tol.eps_sym);
  cmd->add_option("--tol-mat", tol.eps_mat);
  cmd->add_option("--tol-rank", tol.eps_rank);
  cmd->add_option("--tol-unitary", tol.eps_unitary);
  cmd->add_option("--tol-residual", tol.eps_residual);
  cmd->add_option("--tol-rho-pure", tol.rho_pure);
}

void print_matrix(const Matrix& m, const std::string& label) {
  std::cout << label << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (int r = 0; r < m.rows(); ++r) {
    std::cout << "  ";
    for (int c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      std::cout << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
                << "i)" << (c + 1 < m.cols() ? " " : "");
    }
    std::cout << "\n";
  }
}

int run_check(const std::string& file, int p, int q, const ToleranceConfig& tol) {
  const OperatorTuple t = load_tuple(file);
  const ClassReport rep = class_membership(t, p, q, tol);

  std::cout << "tuple: n=" << t.n() << " dim=" << t.dim() << " p=" << p
            << " q=" << q << "\n";
  std::cout << "contractive: " << (rep.is_contractive ? "yes" : "no")
            << " (max norm " << rep.max_norm << ")\n";
  std::cout << "commuting:   " << (rep.is_commuting ? "yes" : "no")
            << " (max commutator " << rep.max_commutator << ")\n";
  std::cout << "pure flags:  ";
  for (size_t i = 0; i < rep.pure_flags.size(); ++i)
    std::cout << (rep.pure_flags[i] ? "1" : "0");
  std::cout << "\n";
  for (const auto& [label, eig] : rep.szego_min_eig)
    std::cout << "szego min eigenvalue " << label << ": " << eig << "\n";
  std::cout << "in_class: " << (rep.in_class ? "true" : "false") << "\n";
  return rep.in_class ? 0 : 1;
}

int run_dilate(const std::string& file, int p, int q, const std::string& mode,
               int degree, const ToleranceConfig& tol) {
  const OperatorTuple t = load_tuple(file);
  DilationPackage pkg;
  if (mode == "finite-rank")
    pkg = build_finite_rank_dilation(t, p, q, tol, degree);
  else if (mode == "general")
    pkg = build_general_dilation(t, p, q, tol, degree);
  else
    throw InputError("mode must be finite-rank or general");

  std::cout << "mode: " << mode << ", embedding rank "
            << pkg.embedding.defect.rank << ", model variables "
            << pkg.embedding.vars() << "\n";
  for (const auto& col : pkg.colligations) {
    print_matrix(col.A(), "colligation A");
    print_matrix(col.B(), "colligation B");
    print_matrix(col.C(), "colligation C");
    print_matrix(col.D(), "colligation D");
  }
  for (size_t i = 0; i < pkg.coords.size(); ++i) {
    const auto& ca = pkg.coords[i];
    if (!ca.is_symbol) {
      std::cout << "coordinate " << i + 1 << ": shift in slot " << ca.shift_slot
                << "\n";
      continue;
    }
    std::cout << "coordinate " << i + 1 << ": symbol in slot "
              << ca.symbol->slot << "\n";
    const int show = ca.symbol->rational() ? 3 : ca.symbol->degree();
    for (int m = 0; m <= show; ++m)
      print_matrix(ca.symbol->coefficient(m),
                   "  Taylor coefficient " + std::to_string(m));
    if (ca.symbol->rational()) std::cout << "  (rational symbol, truncated)\n";
  }

  const DilationReport rep = verify_dilation(pkg, t, degree, tol);
  const double tail = embedding_tail_bound(pkg.embedding, degree);
  std::cout << "residuals:\n";
  for (size_t i = 0; i < rep.coordinate_residuals.size(); ++i)
    std::cout << "  coordinate " << i + 1 << ": " << rep.coordinate_residuals[i]
              << "\n";
  std::cout << "  embedding isometry: " << rep.isometry_residual
            << " (truncation allowance " << tail << ")\n";
  std::cout << "  symbol form: " << rep.symbol_form_residual << "\n";

  const bool ok = rep.max_coordinate_residual() <= tol.eps_residual &&
                  rep.isometry_residual <= tol.eps_residual + tail &&
                  rep.symbol_form_residual <= tol.eps_residual;
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int run_vn(const std::string& file, const std::string& polyfile, int p, int q,
           int grid, bool refined, const ToleranceConfig& tol) {
  const OperatorTuple t = load_tuple(file);
  const std::vector<Polynomial> polys = load_polys(polyfile);
  const std::vector<VNReport> reports = vn_report(t, p, q, polys, grid, refined, tol);

  bool all_ok = true;
  std::cout << "poly  op_norm       torus_sup     variety_sup   slack         ok\n";
  for (size_t i = 0; i < reports.size(); ++i) {
    const VNReport& r = reports[i];
    const bool ok = r.classical_ok && r.refined_ok;
    all_ok = all_ok && ok;
    std::cout << i + 1 << "     " << r.op_norm << "  " << r.torus_sup << "  ";
    if (r.has_variety)
      std::cout << r.variety_sup << "  ";
    else
      std::cout << "-             ";
    std::cout << r.slack << "  " << (ok ? "yes" : "NO") << "\n";
    if (!r.notice.empty() && i == 0) std::cerr << "note: " << r.notice << "\n";
  }
  return all_ok ? 0 : 1;
}

int run_variety(const std::string& file, int grid, const std::string& out,
                const ToleranceConfig& tol) {
  const OperatorTuple t = load_tuple(file);
  const DilationPackage pkg = build_finite_rank_dilation(t, 1, 2, tol, 8);
  const VarietySampleSet s = variety_from_symbol(*pkg.coords[0].symbol, grid, tol);
  write_variety_csv(s, t.n(), resolve_out(out));
  std::cout << "wrote " << s.samples.size() << " samples at grid " << grid
            << "\n";
  return 0;
}

int run_random(const std::string& kind, int n, int dim, double rho, int p,
               int q, int e_dim, int degree, unsigned seed,
               const std::string& out) {
  OperatorTuple t;
  std::string comment;
  if (kind == "diag") {
    t = gen_diagonal(n, dim, rho, seed);
    comment = "diag seed=" + std::to_string(seed);
  } else if (kind == "model") {
    t = gen_model_compression(n, p, q, e_dim, degree, seed);
    comment = "model seed=" + std::to_string(seed);
  } else {
    throw InputError("kind must be diag or model");
  }
  save_tuple(t, resolve_out(out), comment);
  std::cout << "wrote tuple n=" << t.n() << " dim=" << t.dim() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isometric dilations and von Neumann inequalities on the polydisc"};
  app.require_subcommand(1);

  ToleranceConfig tol;
  std::string file, polyfile, out, mode = "general", kind = "diag";
  int p = 1, q = 2, grid = 64, degree = 8, n = 3, dim = 2, e_dim = 2;
  double rho = 0.5;
  unsigned seed = 1;
  bool refined = false;

  CLI::App* check = app.add_subcommand("check", "class membership report");
  check->add_option("file", file)->required();
  check->add_option("--p", p);
  check->add_option("--q", q);
  add_tolerance_flags(check, tol);

  CLI::App* dilate = app.add_subcommand("dilate", "build and verify a dilation");
  dilate->add_option("file", file)->required();
  dilate->add_option("--p", p)->required();
  dilate->add_option("--q", q)->required();
  dilate->add_option("--mode", mode)->check(CLI::IsMember({"finite-rank", "general"}));
  dilate->add_option("--degree", degree);
  add_tolerance_flags(dilate, tol);

  CLI::App* vn = app.add_subcommand("vn", "von Neumann inequality report");
  vn->add_option("file", file)->required();
  vn->add_option("--polys", polyfile)->required();
  vn->add_option("--p", p);
  vn->add_option("--q", q);
  vn->add_option("--grid", grid);
  vn->add_flag("--refined", refined);
  add_tolerance_flags(vn, tol);

  CLI::App* variety = app.add_subcommand("variety", "variety samples as CSV");
  variety->add_option("file", file)->required();
  variety->add_option("--grid", grid);
  variety->add_option("--out", out)->required();
  add_tolerance_flags(variety, tol);

  CLI::App* random_cmd = app.add_subcommand("random", "generate a tuple file");
  random_cmd->add_option("--kind", kind)->check(CLI::IsMember({"diag", "model"}));
  random_cmd->add_option("--n", n);
  random_cmd->add_option("--dim", dim);
  random_cmd->add_option("--rho", rho);
  random_cmd->add_option("--p", p);
  random_cmd->add_option("--q", q);
  random_cmd->add_option("--e", e_dim);
  random_cmd->add_option("--degree", degree);
  random_cmd->add_option("--seed", seed);
  random_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(file, p, q, tol);
    if (dilate->parsed()) return run_dilate(file, p, q, mode, degree, tol);
    if (vn->parsed()) return run_vn(file, polyfile, p, q, grid, refined, tol);
    if (variety->parsed()) return run_variety(file, grid, out, tol);
    if (random_cmd->parsed())
      return run_random(kind, n, dim, rho, p, q, e_dim, degree, seed, out);
  } catch (const polydisc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const polydisc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
