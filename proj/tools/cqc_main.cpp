// cqc: evaluate the correlation bound on explicit states, sweep the
// asymmetric Werner family, scatter perturbed boundary states, and run
// random-state searches.
//
// Exit codes: 0 success / no counterexample, 2 counterexample candidate
// found, 64 usage or malformed input file, 65 file parsed but is not a
// valid state, 73 output I/O failure, 70 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cqc/bounds.hpp"
#include "cqc/errors.hpp"
#include "cqc/reporting.hpp"
#include "cqc/search.hpp"
#include "cqc/state_io.hpp"

namespace {

std::vector<std::pair<cqc::Index, cqc::Index>> parse_dims(
    const std::string& text) {
  std::vector<std::pair<cqc::Index, cqc::Index>> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t x = item.find('x');
    if (x == std::string::npos) {
      throw cqc::ConfigInvalid("bad dims entry \"" + item +
                               "\" (expected MxN, e.g. 2x3)");
    }
    try {
      std::size_t used_a = 0, used_b = 0;
      const long a = std::stol(item.substr(0, x), &used_a);
      const long b = std::stol(item.substr(x + 1), &used_b);
      if (used_a != x || used_b != item.size() - x - 1) {
        throw std::invalid_argument(item);
      }
      dims.emplace_back(cqc::Index(a), cqc::Index(b));
    } catch (const std::exception&) {
      throw cqc::ConfigInvalid("bad dims entry \"" + item + "\"");
    }
    pos = comma + 1;
  }
  return dims;
}

// n list for scatter mode: "2,3,4" -> square dims
std::vector<std::pair<cqc::Index, cqc::Index>> parse_n_list(
    const std::string& text) {
  std::vector<std::pair<cqc::Index, cqc::Index>> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const long n = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      dims.emplace_back(cqc::Index(n), cqc::Index(n));
    } catch (const std::exception&) {
      throw cqc::ConfigInvalid("bad n entry \"" + item + "\"");
    }
    pos = comma + 1;
  }
  return dims;
}

std::string dir_of(const std::string& path) {
  const std::size_t slash = path.rfind('/');
  return slash == std::string::npos ? std::string(".")
                                    : path.substr(0, slash);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw cqc::IoError("error writing to stdout");
  } else {
    cqc::write_text_file(out_path, content);
  }
}

void append_report(const std::string& report_path, const std::string& text) {
  if (report_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(report_path, std::ios::binary | std::ios::app);
  if (!out) throw cqc::IoError("cannot open report file: " + report_path);
  out << text;
  out.flush();
  if (!out) throw cqc::IoError("error writing report file: " + report_path);
}

cqc::BasisQuadruple make_quadruple(const std::string& choice,
                                   cqc::Index dim_a, cqc::Index dim_b) {
  if (choice == "comp-fourier") {
    return cqc::comp_fourier_quadruple(dim_a, dim_b);
  }
  if (dim_a != 2 || dim_b != 2) {
    throw cqc::ConfigInvalid("basis choice \"" + choice +
                             "\" needs a 2x2 state");
  }
  if (choice == "pauli-xy") {
    return cqc::pauli_quadruple(cqc::Pauli::X, cqc::Pauli::Y);
  }
  if (choice == "pauli-zx") {
    return cqc::pauli_quadruple(cqc::Pauli::Z, cqc::Pauli::X);
  }
  throw cqc::ConfigInvalid("unknown basis choice \"" + choice + "\"");
}

std::string basis_label(const std::string& choice) {
  if (choice == "pauli-xy") return "sigma_x / sigma_y on each qubit";
  if (choice == "pauli-zx") return "sigma_z / sigma_x on each qubit";
  return "computational / Fourier on each party";
}

struct BoundsArgs {
  std::string state_path;
  std::string bases = "comp-fourier";
  std::string csv_path;
};

struct SweepArgs {
  double p = 0.75;
  std::int64_t grid = 201;
  std::string out_path;
};

struct SearchArgs {
  std::string dims = "2x2,2x3,3x3,2x4,3x4,4x4";
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_path;
  std::string report_path;
  std::string dump_dir;
  bool no_dump = false;
};

struct ScatterArgs {
  std::string n_list = "2,3,4";
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  cqc::Index lambda_grid = 101;
  double eps_low = 1e-3;
  double eps_high = 1.0;
  std::string out_path;
  std::string report_path;
  std::string dump_dir;
  bool no_dump = false;
};

int run_bounds(const BoundsArgs& args) {
  const cqc::DensityMatrix rho = cqc::load_state_file(args.state_path);
  const cqc::BasisQuadruple quad =
      make_quadruple(args.bases, rho.dim_a(), rho.dim_b());
  const cqc::CqcReport rep = cqc::evaluate(rho, quad);
  std::cout << cqc::report_text(rep, basis_label(args.bases));
  if (!args.csv_path.empty()) {
    cqc::write_text_file(args.csv_path, std::string(cqc::report_csv_header()) +
                                            "\n" + cqc::report_csv_row(rep) +
                                            "\n");
  }
  return 0;
}

int run_sweep(const SweepArgs& args) {
  const auto rows = cqc::run_werner_sweep(args.p, cqc::Index(args.grid));
  std::ostringstream csv;
  cqc::write_werner_csv(csv, rows);
  emit(args.out_path, csv.str());
  return 0;
}

std::string resolved_dump_dir(const std::string& explicit_dir, bool no_dump,
                              const std::string& out_path) {
  if (no_dump) return "";
  if (!explicit_dir.empty()) return explicit_dir;
  return out_path.empty() ? "." : dir_of(out_path);
}

int run_search_cmd(const SearchArgs& args) {
  cqc::SearchConfig cfg;
  cfg.dims = parse_dims(args.dims);
  cfg.samples_per_dim = args.samples;
  cfg.master_seed = args.seed;
  cfg.mode = cqc::SearchMode::Uniform;
  cfg.workers = args.workers;
  cfg.dump_dir = resolved_dump_dir(args.dump_dir, args.no_dump, args.out_path);
  const cqc::SearchResult res = cqc::run_uniform_search(cfg);
  std::ostringstream csv;
  cqc::write_search_csv(csv, res.records);
  emit(args.out_path, csv.str());
  append_report(args.report_path, cqc::summary_text(res.summary));
  return res.summary.total_counterexamples > 0 ? 2 : 0;
}

int run_scatter_cmd(const ScatterArgs& args) {
  cqc::SearchConfig cfg;
  cfg.dims = parse_n_list(args.n_list);
  cfg.samples_per_dim = args.samples;
  cfg.master_seed = args.seed;
  cfg.mode = cqc::SearchMode::BoundaryPerturb;
  cfg.lambda_grid = args.lambda_grid;
  cfg.epsilon_low = args.eps_low;
  cfg.epsilon_high = args.eps_high;
  cfg.workers = args.workers;
  cfg.dump_dir = resolved_dump_dir(args.dump_dir, args.no_dump, args.out_path);
  const cqc::SearchResult res = cqc::run_boundary_perturbation(cfg);
  std::ostringstream csv;
  cqc::write_scatter_csv(csv, res.records);
  emit(args.out_path, csv.str());
  append_report(args.report_path, cqc::summary_text(res.summary));
  return res.summary.total_counterexamples > 0 ? 2 : 0;
}

int run_pure_cmd(const SearchArgs& args) {
  cqc::SearchConfig cfg;
  cfg.dims = parse_dims(args.dims);
  cfg.samples_per_dim = args.samples;
  cfg.master_seed = args.seed;
  cfg.mode = cqc::SearchMode::PureStates;
  cfg.workers = args.workers;
  cfg.dump_dir = resolved_dump_dir(args.dump_dir, args.no_dump, args.out_path);
  const cqc::SearchResult res = cqc::run_pure_state_check(cfg);
  if (!args.out_path.empty()) {
    std::ostringstream csv;
    cqc::write_search_csv(csv, res.records);
    emit(args.out_path, csv.str());
  }
  append_report(args.report_path, cqc::summary_text(res.summary));
  return res.summary.total_counterexamples > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "correlation bounds from complementary measurement pairs:\n"
      "evaluate states, sweep the asymmetric Werner family, scatter\n"
      "perturbed boundary states, and search for counterexamples"};
  app.require_subcommand(1);

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "evaluate one state from a JSON state file");
  bounds->add_option("--state", bounds_args.state_path, "state file (JSON)")
      ->required();
  bounds
      ->add_option("--bases", bounds_args.bases,
                   "comp-fourier | pauli-xy | pauli-zx (Pauli pairs need 2x2)")
      ->default_val("comp-fourier");
  bounds->add_option("--csv", bounds_args.csv_path,
                     "also write the report as a one-row CSV to this path");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "werner-sweep", "asymmetric Werner family over an eta grid");
  sweep->add_option("--p", sweep_args.p, "singlet weight in [0,1]")
      ->default_val(0.75);
  sweep->add_option("--grid", sweep_args.grid, "number of eta points (>= 2)")
      ->default_val(201);
  sweep->add_option("--out", sweep_args.out_path,
                    "CSV output path (default: stdout)");

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand(
      "search", "uniform random-state counterexample search");
  search->add_option("--dims", search_args.dims, "MxN list, e.g. 2x2,3x4")
      ->default_val(search_args.dims);
  search
      ->add_option("--samples", search_args.samples,
                   "samples per dim (0 = defaults: 1e5 small, 1e4 large)")
      ->default_val(0);
  search->add_option("--seed", search_args.seed, "master seed")
      ->default_val(0);
  search->add_option("--workers", search_args.workers, "worker threads")
      ->default_val(1);
  search->add_option("--out", search_args.out_path,
                     "CSV output path (default: stdout)");
  search->add_option("--report", search_args.report_path,
                     "append the summary block to this file");
  search->add_option("--dump-dir", search_args.dump_dir,
                     "directory for counterexample dumps "
                     "(default: next to --out)");
  search->add_flag("--no-dump", search_args.no_dump,
                   "disable counterexample dumps");

  ScatterArgs scatter_args;
  CLI::App* scatter = app.add_subcommand(
      "scatter", "perturbed saturating boundary mixtures on NxN");
  scatter->add_option("--n", scatter_args.n_list, "local dims, e.g. 2,3,4")
      ->default_val(scatter_args.n_list);
  scatter
      ->add_option("--samples", scatter_args.samples,
                   "record budget per dim (0 = defaults)")
      ->default_val(0);
  scatter->add_option("--seed", scatter_args.seed, "master seed")
      ->default_val(0);
  scatter->add_option("--workers", scatter_args.workers, "worker threads")
      ->default_val(1);
  scatter
      ->add_option("--lambda-grid", scatter_args.lambda_grid,
                   "mixture grid points (>= 2)")
      ->default_val(101);
  scatter->add_option("--eps-low", scatter_args.eps_low,
                      "perturbation magnitude lower end (> 0)")
      ->default_val(1e-3);
  scatter->add_option("--eps-high", scatter_args.eps_high,
                      "perturbation magnitude upper end")
      ->default_val(1.0);
  scatter->add_option("--out", scatter_args.out_path,
                      "CSV output path (default: stdout)");
  scatter->add_option("--report", scatter_args.report_path,
                      "append the summary block to this file");
  scatter->add_option("--dump-dir", scatter_args.dump_dir,
                      "directory for counterexample dumps");
  scatter->add_flag("--no-dump", scatter_args.no_dump,
                    "disable counterexample dumps");

  SearchArgs pure_args;
  pure_args.dims = "2x2";
  CLI::App* pure = app.add_subcommand(
      "pure-check", "pure-state gap check with random (non-unbiased) bases");
  pure->add_option("--dims", pure_args.dims, "MxN list")
      ->default_val(pure_args.dims);
  pure->add_option("--samples", pure_args.samples,
                   "samples per dim (0 = defaults)")
      ->default_val(0);
  pure->add_option("--seed", pure_args.seed, "master seed")->default_val(0);
  pure->add_option("--workers", pure_args.workers, "worker threads")
      ->default_val(1);
  pure->add_option("--out", pure_args.out_path,
                   "optional records CSV output path");
  pure->add_option("--report", pure_args.report_path,
                   "append the summary block to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (bounds->parsed()) return run_bounds(bounds_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (search->parsed()) return run_search_cmd(search_args);
    if (scatter->parsed()) return run_scatter_cmd(scatter_args);
    if (pure->parsed()) return run_pure_cmd(pure_args);
    std::cerr << "no subcommand\n";
    return 64;
  } catch (const cqc::StateParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const cqc::ConfigInvalid& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const cqc::NonSquareDim& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const cqc::ParamOutOfRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const cqc::NotAState& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 65;
  } catch (const cqc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 73;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  }
}
