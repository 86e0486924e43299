// Command-line front end: reduce / solve / bench / eils-bench.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ils/bench.hpp"
#include "ils/dense.hpp"
#include "ils/eils.hpp"
#include "ils/errors.hpp"
#include "ils/reduce_quadratic.hpp"
#include "ils/reduce_standard.hpp"
#include "ils/search.hpp"

namespace {

using namespace ils;

std::string join(const IntVector& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

void write_trace(const std::string& path, const SearchTrace& trace) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path);
  os << "# search trace\n";
  os << "# node,<level>,<value>: one line per integer assignment (level is\n";
  os << "#   1-based; level n is assigned first). The node count is the\n";
  os << "#   number of these lines.\n";
  os << "# row,<z_1>,...,<z_n>: table-style rows; a full row is a valid\n";
  os << "#   point, '-' entries mark levels without a valid integer at an\n";
  os << "#   invalid-point event, and the final all-dash row is the\n";
  os << "#   exhaustion of the top level.\n";
  for (const auto& [level, value] : trace.nodes)
    os << "node," << level + 1 << ',' << value << '\n';
  for (const auto& row : trace.rows) {
    os << "row";
    for (const auto& cell : row) {
      os << ',';
      if (cell)
        os << *cell;
      else
        os << '-';
    }
    os << '\n';
  }
}

void print_result(const SearchOutcome& out) {
  std::printf("found=%d x=[%s] objective=%.17g nodes=%llu babai=[%s]\n",
              out.found ? 1 : 0, join(out.x_opt).c_str(), out.beta_sq,
              out.nodes, join(out.babai).c_str());
}

Matrix int_to_matrix(const IntMatrix& Z) { return Z.to_real(); }

int cmd_reduce(const std::string& form, const std::string& method,
               const std::string& a_path, const std::string& y_path,
               const std::string& w_path, const std::string& xhat_path,
               const std::string& out_prefix) {
  if (form == "standard") {
    Matrix A = load_matrix(a_path);
    Vector y = load_vector(y_path);
    QrzReduction red = method == "plll" ? plll_reduce(A, y) : lll_reduce(A, y);
    save_matrix(out_prefix + ".R.txt", red.R);
    save_matrix(out_prefix + ".Z.txt", int_to_matrix(red.uz.Z));
    save_vector(out_prefix + ".ybar.txt", red.ybar);
    std::printf("igt=%lld swaps=%lld\n", red.igt_count, red.swap_count);
    return 0;
  }
  Matrix W = load_matrix(w_path);
  Vector xhat = load_vector(xhat_path);
  LtdlState st = reduce_quadratic_by_name(method, W, xhat);
  double rbe = relative_backward_error(W, st.uz, st.L, st.d);
  save_matrix(out_prefix + ".L.txt", st.L);
  save_vector(out_prefix + ".D.txt", st.d);
  save_matrix(out_prefix + ".Z.txt", int_to_matrix(st.uz.Z));
  save_vector(out_prefix + ".zhat.txt", st.zhat);
  std::printf("igt=%lld perms=%lld rbe=%.17g\n", st.igt_count, st.perm_count, rbe);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer least squares solver and benchmark tool"};
  app.require_subcommand(1);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Run a reduction, write factors");
  std::string r_form, r_method, r_a, r_y, r_w, r_xhat, r_out;
  reduce->add_option("--form", r_form, "standard|quadratic")->required();
  reduce->add_option("--method", r_method,
                     "lll|plll (standard); lambda|mreduction|preduction|"
                     "minreduction|noreduction (quadratic)")
      ->required();
  reduce->add_option("--a", r_a, "generator matrix file");
  reduce->add_option("--y", r_y, "input vector file");
  reduce->add_option("--w", r_w, "covariance matrix file");
  reduce->add_option("--xhat", r_xhat, "real estimate file");
  reduce->add_option("--out", r_out, "output file prefix")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Reduce and search");
  std::string s_form, s_method = "lll", s_a, s_y, s_w, s_xhat, s_trace;
  double s_alpha = 0.0, s_beta0 = 0.0;
  solve->add_option("--form", s_form, "standard|quadratic|eils")->required();
  solve->add_option("--method", s_method, "reduction method");
  solve->add_option("--a", s_a, "generator matrix file");
  solve->add_option("--y", s_y, "input vector file");
  solve->add_option("--w", s_w, "covariance matrix file");
  solve->add_option("--xhat", s_xhat, "real estimate file");
  solve->add_option("--alpha", s_alpha, "constraint radius (eils)");
  solve->add_option("--beta0", s_beta0,
                    "warm-start search radius (0 = infinite)");
  solve->add_option("--trace", s_trace, "write the search trace CSV here");

  // bench
  auto* bench = app.add_subcommand("bench", "Quadratic-form benchmark suite");
  std::string b_cases = "1,2,3,4,5,6,7,8,9", b_methods, b_out;
  ils::BenchConfig bcfg;
  bench->add_option("--cases", b_cases, "comma-separated case ids");
  bench->add_option("--nmin", bcfg.nmin, "smallest dimension");
  bench->add_option("--nmax", bcfg.nmax, "largest dimension");
  bench->add_option("--runs", bcfg.runs, "runs per (case, n)");
  bench->add_option("--seed", bcfg.seed, "master seed");
  bench->add_option("--methods", b_methods, "comma-separated methods");
  bench->add_option("--out", b_out, "CSV path ('-' for stdout)")->required();

  // eils-bench
  auto* ebench = app.add_subcommand("eils-bench", "EILS noise sweep");
  std::string e_out;
  ils::EilsBenchConfig ecfg;
  ebench->add_option("--sigma", ecfg.sigma, "noise standard deviation")->required();
  ebench->add_option("--nmin", ecfg.nmin, "smallest dimension");
  ebench->add_option("--nmax", ecfg.nmax, "largest dimension");
  ebench->add_option("--runs", ecfg.runs, "runs per dimension");
  ebench->add_option("--seed", ecfg.seed, "master seed");
  ebench->add_option("--out", e_out, "CSV path ('-' for stdout)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (reduce->parsed())
      return cmd_reduce(r_form, r_method, r_a, r_y, r_w, r_xhat, r_out);

    if (solve->parsed()) {
      ils::SearchTrace trace;
      ils::SearchTrace* tp = s_trace.empty() ? nullptr : &trace;
      double beta0 = s_beta0 > 0.0 ? s_beta0 : ils::kInfiniteRadius;
      ils::SearchOutcome out;
      if (s_form == "standard") {
        Matrix A = load_matrix(s_a);
        Vector y = load_vector(s_y);
        QrzReduction red =
            s_method == "plll" ? plll_reduce(A, y) : lll_reduce(A, y);
        out = search_standard(red.R, red.ybar, beta0, tp);
        if (out.found) out.x_opt = red.uz.Z.mul(out.z_opt);
      } else if (s_form == "quadratic") {
        Matrix W = load_matrix(s_w);
        Vector xhat = load_vector(s_xhat);
        LtdlState st = reduce_quadratic_by_name(
            s_method == "lll" ? "lambda" : s_method, W, xhat);
        out = search_quadratic(st, beta0, tp);
      } else if (s_form == "eils") {
        EilsProblem p{load_matrix(s_a), load_vector(s_y), s_alpha};
        out = solve_eils(p,
                         s_method == "clll" ? EilsStrategy::clll
                                            : EilsStrategy::lll,
                         tp, beta0);
      } else {
        std::fprintf(stderr, "unknown form: %s\n", s_form.c_str());
        return 1;
      }
      if (!s_trace.empty()) write_trace(s_trace, trace);
      print_result(out);
      return 0;
    }

    std::vector<ils::BenchRecord> records;
    std::string out_path;
    if (bench->parsed()) {
      std::stringstream cs(b_cases);
      std::string tok;
      while (std::getline(cs, tok, ',')) bcfg.cases.push_back(std::stoi(tok));
      if (!b_methods.empty()) {
        std::stringstream ms(b_methods);
        while (std::getline(ms, tok, ',')) bcfg.methods.push_back(tok);
      }
      bcfg.threads = ils::env_threads();
      records = ils::run_bench(bcfg);
      out_path = b_out;
    } else {
      ecfg.threads = ils::env_threads();
      records = ils::run_eils_bench(ecfg);
      out_path = e_out;
    }
    if (out_path == "-") {
      ils::write_csv(std::cout, records);
    } else {
      std::ofstream os(out_path);
      if (!os) throw ils::Error("cannot open " + out_path);
      ils::write_csv(os, records);
    }
    for (const auto& r : records)
      if (r.status != "ok") return 2;
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
