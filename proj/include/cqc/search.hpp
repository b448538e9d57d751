#pragma once

// Experiment harnesses: uniform random-state counterexample search,
// perturbed boundary-state scatter, the asymmetric-Werner sweep, and the
// pure-state theorem check.
//
// Determinism contract: every record is a pure function of the config.
// Each sample owns an RNG stream keyed by (master_seed, mode, dims, sample
// index), so record i can be regenerated in isolation, and the worker count
// only changes who computes a record, never its value or its position in
// the output. Workers fill disjoint slots of a pre-sized record vector;
// aggregation runs serially over the finished vector.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cqc/bounds.hpp"
#include "cqc/errors.hpp"
#include "cqc/linalg.hpp"
#include "cqc/rng.hpp"
#include "cqc/state_io.hpp"
#include "cqc/states.hpp"

namespace cqc {

// gap below this is a counterexample candidate; in [threshold, 0) it is
// booked as numerical noise.
constexpr double kCounterexampleGap = -1e-7;
// pure states carry a proof, so anything below this throws.
constexpr double kPureGapFloor = -1e-9;

enum class SearchMode { Uniform, BoundaryPerturb, PureStates };

inline const char* mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::Uniform: return "uniform";
    case SearchMode::BoundaryPerturb: return "boundary-perturb";
    case SearchMode::PureStates: return "pure-states";
  }
  return "?";
}

inline std::uint64_t mode_id(SearchMode m) {
  switch (m) {
    case SearchMode::Uniform: return 1;
    case SearchMode::BoundaryPerturb: return 2;
    case SearchMode::PureStates: return 3;
  }
  return 0;
}

struct SearchConfig {
  std::vector<std::pair<Index, Index>> dims;
  std::int64_t samples_per_dim = 0;  // 0 = per-dim defaults (1e5 small, 1e4 large)
  std::uint64_t master_seed = 0;
  SearchMode mode = SearchMode::Uniform;
  double epsilon_low = 1e-3;
  double epsilon_high = 1.0;
  Index lambda_grid = 101;
  int workers = 1;
  std::string dump_dir;  // empty: counterexample dumps disabled
};

inline void validate_config(const SearchConfig& cfg) {
  if (cfg.dims.empty()) throw ConfigInvalid("config: dims list is empty");
  for (const auto& [m, n] : cfg.dims) {
    if (m < 2 || n < 2) {
      throw ConfigInvalid("config: dims must be at least 2x2, got " +
                          std::to_string(m) + "x" + std::to_string(n));
    }
  }
  if (cfg.samples_per_dim < 0) {
    throw ConfigInvalid("config: samples must be >= 1 (0 selects defaults)");
  }
  if (!(cfg.epsilon_low > 0.0) || !(cfg.epsilon_high > cfg.epsilon_low)) {
    throw ConfigInvalid("config: need 0 < epsilon_low < epsilon_high");
  }
  if (cfg.lambda_grid < 2) throw ConfigInvalid("config: lambda_grid must be >= 2");
  if (cfg.workers < 1) throw ConfigInvalid("config: workers must be >= 1");
}

inline std::int64_t resolved_samples(const SearchConfig& cfg, Index m,
                                     Index n) {
  if (cfg.samples_per_dim > 0) return cfg.samples_per_dim;
  return std::max(m, n) <= 3 ? 100000 : 10000;
}

struct SampleRecord {
  Index dim_a = 0;
  Index dim_b = 0;
  std::int64_t index = 0;
  double mi_sum = 0.0;
  double qmi = 0.0;
  double gap = 0.0;
  double residual_a = 0.0;
  double residual_b = 0.0;
  bool has_family = false;          // boundary mode only
  MixtureFamily family = MixtureFamily::BellWithMcm;
  double lambda = 0.0;
  double epsilon = 0.0;
  bool entangled_witness = false;
  Side witness_side = Side::A;
  bool steering_witness = false;
};

struct DimSummary {
  Index dim_a = 0;
  Index dim_b = 0;
  std::int64_t samples = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  std::int64_t counterexamples = 0;
  std::int64_t noise_negatives = 0;
  double mean_residual_a = 0.0;
  double min_residual_a = std::numeric_limits<double>::infinity();
  double min_residual_b = std::numeric_limits<double>::infinity();
  std::int64_t witness_positives = 0;
};

struct SearchSummary {
  SearchMode mode = SearchMode::Uniform;
  std::uint64_t master_seed = 0;
  std::vector<DimSummary> per_dim;
  std::int64_t total_samples = 0;
  std::int64_t total_counterexamples = 0;
  std::int64_t total_noise_negatives = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  double wall_seconds = 0.0;
};

struct SearchResult {
  std::vector<SampleRecord> records;
  SearchSummary summary;
};

// Contiguous static block partition; workers == 1 stays on this thread.
// The callback must only touch state owned by index i.
template <typename Fn>
inline void parallel_for_indexed(std::int64_t total, int workers, Fn&& fn) {
  if (total <= 0) return;
  const int w = int(std::min<std::int64_t>(std::max(workers, 1), total));
  if (w == 1) {
    for (std::int64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
  {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(w));
    for (int t = 0; t < w; ++t) {
      const std::int64_t lo = total * t / w;
      const std::int64_t hi = total * (t + 1) / w;
      pool.emplace_back([&fn, &errors, lo, hi, t] {
        try {
          for (std::int64_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
          errors[std::size_t(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Stream for one sample, reconstructible from its coordinates alone.
inline RandomStream sample_stream(std::uint64_t master_seed, SearchMode mode,
                                  Index m, Index n, std::int64_t index) {
  return RandomStream::keyed(master_seed,
                             {mode_id(mode), std::uint64_t(m),
                              std::uint64_t(n), std::uint64_t(index)});
}

// The i-th state of a uniform search, regenerated in isolation (used for
// independent re-verification of flagged records).
inline DensityMatrix uniform_sample_state(std::uint64_t master_seed, Index m,
                                          Index n, std::int64_t index) {
  RandomStream rng =
      sample_stream(master_seed, SearchMode::Uniform, m, n, index);
  return random_density_matrix(m, n, rng);
}

namespace detail {

inline nlohmann::json matrix_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      rows.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return rows;
}

// Counterexample candidates get the full state (and any non-standard bases)
// written out for re-verification; distinct filenames keep this safe from
// worker threads.
inline void dump_candidate(const std::string& dir, const SearchConfig& cfg,
                           const SampleRecord& rec, const DensityMatrix& rho,
                           const nlohmann::json& basis_note) {
  if (dir.empty()) return;
  nlohmann::json ann;
  ann["kind"] = "counterexample-candidate";
  ann["mode"] = mode_name(cfg.mode);
  ann["master_seed"] = cfg.master_seed;
  ann["index"] = rec.index;
  ann["cqc_sum"] = rec.mi_sum;
  ann["qmi"] = rec.qmi;
  ann["gap"] = rec.gap;
  if (rec.has_family) {
    ann["family"] = family_name(rec.family);
    ann["lambda"] = rec.lambda;
    ann["epsilon"] = rec.epsilon;
  }
  ann["bases"] = basis_note;
  const std::string path = dir + "/counterexample_" +
                           std::to_string(rec.dim_a) + "x" +
                           std::to_string(rec.dim_b) + "_" +
                           std::to_string(rec.index) + ".json";
  write_state_file(path, rho, ann);
}

inline void fold_into(DimSummary& dim, const SampleRecord& rec) {
  dim.samples += 1;
  dim.min_gap = std::min(dim.min_gap, rec.gap);
  if (rec.gap < kCounterexampleGap) {
    dim.counterexamples += 1;
  } else if (rec.gap < 0.0) {
    dim.noise_negatives += 1;
  }
  dim.mean_residual_a += rec.residual_a;  // sum here, divided when sealed
  dim.min_residual_a = std::min(dim.min_residual_a, rec.residual_a);
  dim.min_residual_b = std::min(dim.min_residual_b, rec.residual_b);
  if (rec.entangled_witness) dim.witness_positives += 1;
}

inline void seal(DimSummary& dim) {
  if (dim.samples > 0) dim.mean_residual_a /= double(dim.samples);
}

inline void fold_totals(SearchSummary& sum) {
  for (const DimSummary& d : sum.per_dim) {
    sum.total_samples += d.samples;
    sum.total_counterexamples += d.counterexamples;
    sum.total_noise_negatives += d.noise_negatives;
    sum.min_gap = std::min(sum.min_gap, d.min_gap);
  }
}

}  // namespace detail

inline SearchResult run_uniform_search(const SearchConfig& cfg) {
  validate_config(cfg);
  if (cfg.mode != SearchMode::Uniform) {
    throw ConfigInvalid("run_uniform_search: config mode is not uniform");
  }
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult out;
  out.summary.mode = cfg.mode;
  out.summary.master_seed = cfg.master_seed;

  for (const auto& [m, n] : cfg.dims) {
    const std::int64_t count = resolved_samples(cfg, m, n);
    const BasisQuadruple quad = comp_fourier_quadruple(m, n);
    std::vector<SampleRecord> block(static_cast<std::size_t>(count));

    parallel_for_indexed(count, cfg.workers, [&, m = m, n = n](std::int64_t i) {
      DensityMatrix rho = uniform_sample_state(cfg.master_seed, m, n, i);
      const CqcReport rep = evaluate(rho, quad);
      SampleRecord& rec = block[std::size_t(i)];
      rec.dim_a = m;
      rec.dim_b = n;
      rec.index = i;
      rec.mi_sum = rep.mi_sum;
      rec.qmi = rep.qmi;
      rec.gap = rep.gap;
      rec.residual_a = rep.residual_a;
      rec.residual_b = rep.residual_b;
      rec.entangled_witness = rep.entangled_witness;
      rec.witness_side = rep.witness_side;
      rec.steering_witness = rep.steering_witness;
      if (rec.gap < kCounterexampleGap) {
        detail::dump_candidate(cfg.dump_dir, cfg, rec, rho,
                               "computational-fourier");
      }
    });

    DimSummary dim;
    dim.dim_a = m;
    dim.dim_b = n;
    for (const SampleRecord& rec : block) detail::fold_into(dim, rec);
    detail::seal(dim);
    out.summary.per_dim.push_back(dim);
    out.records.insert(out.records.end(), block.begin(), block.end());
  }

  detail::fold_totals(out.summary);
  out.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

inline SearchResult run_boundary_perturbation(const SearchConfig& cfg) {
  validate_config(cfg);
  if (cfg.mode != SearchMode::BoundaryPerturb) {
    throw ConfigInvalid(
        "run_boundary_perturbation: config mode is not boundary-perturb");
  }
  for (const auto& [m, n] : cfg.dims) {
    if (m != n) {
      throw NonSquareDim("run_boundary_perturbation: " + std::to_string(m) +
                         "x" + std::to_string(n) +
                         " (mixture families need square dims)");
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult out;
  out.summary.mode = cfg.mode;
  out.summary.master_seed = cfg.master_seed;

  const double log_lo = std::log(cfg.epsilon_low);
  const double log_hi = std::log(cfg.epsilon_high);
  const MixtureFamily families[2] = {MixtureFamily::BellWithMcm,
                                     MixtureFamily::McmWithMm};

  for (const auto& [m, n] : cfg.dims) {
    const Index nn = m;
    const std::int64_t budget = resolved_samples(cfg, nn, nn);
    const std::int64_t cells = 2 * std::int64_t(cfg.lambda_grid);
    // per (family, lambda) cell: one exact endpoint record at epsilon = 0,
    // the rest log-uniform in [epsilon_low, epsilon_high]
    const std::int64_t per_cell = std::max<std::int64_t>(1, (budget + cells - 1) / cells);
    const std::int64_t count = cells * per_cell;

    const BasisQuadruple quad = comp_fourier_quadruple(nn, nn);
    std::vector<DensityMatrix> base_states;
    base_states.reserve(std::size_t(cells));
    for (const MixtureFamily fam : families) {
      for (Index li = 0; li < cfg.lambda_grid; ++li) {
        const double lambda = double(li) / double(cfg.lambda_grid - 1);
        base_states.push_back(
            boundary_mixture(BoundaryMixtureSpec{fam, lambda, nn}));
      }
    }

    std::vector<SampleRecord> block(static_cast<std::size_t>(count));
    parallel_for_indexed(count, cfg.workers, [&](std::int64_t i) {
      const std::int64_t cell = i / per_cell;
      const std::int64_t j = i % per_cell;
      const MixtureFamily fam = families[cell / cfg.lambda_grid];
      const Index li = Index(cell % cfg.lambda_grid);
      const double lambda = double(li) / double(cfg.lambda_grid - 1);
      const DensityMatrix& base = base_states[std::size_t(cell)];

      RandomStream rng = sample_stream(cfg.master_seed, cfg.mode, nn, nn, i);
      double epsilon = 0.0;
      DensityMatrix rho = base;
      if (j > 0) {
        epsilon = std::exp(log_lo + (log_hi - log_lo) * rng.uniform());
        rho = perturb(base, epsilon, rng);
      }
      const CqcReport rep = evaluate(rho, quad);
      SampleRecord& rec = block[std::size_t(i)];
      rec.dim_a = nn;
      rec.dim_b = nn;
      rec.index = i;
      rec.mi_sum = rep.mi_sum;
      rec.qmi = rep.qmi;
      rec.gap = rep.gap;
      rec.residual_a = rep.residual_a;
      rec.residual_b = rep.residual_b;
      rec.has_family = true;
      rec.family = fam;
      rec.lambda = lambda;
      rec.epsilon = epsilon;
      rec.entangled_witness = rep.entangled_witness;
      rec.witness_side = rep.witness_side;
      rec.steering_witness = rep.steering_witness;
      if (rec.gap < kCounterexampleGap) {
        detail::dump_candidate(cfg.dump_dir, cfg, rec, rho,
                               "computational-fourier");
      }
    });

    DimSummary dim;
    dim.dim_a = nn;
    dim.dim_b = nn;
    for (const SampleRecord& rec : block) detail::fold_into(dim, rec);
    detail::seal(dim);
    out.summary.per_dim.push_back(dim);
    out.records.insert(out.records.end(), block.begin(), block.end());
  }

  detail::fold_totals(out.summary);
  out.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

// Haar pure states measured with unconstrained random basis quadruples
// (deliberately not unbiased pairs): the gap theorem for pure states covers
// arbitrary observables, so any gap below kPureGapFloor is an internal
// error, not a discovery. Residuals, whose nonnegativity guarantee is tied
// to unbiased pairs, are evaluated with the computational/Fourier quadruple.
inline SearchResult run_pure_state_check(const SearchConfig& cfg) {
  validate_config(cfg);
  if (cfg.mode != SearchMode::PureStates) {
    throw ConfigInvalid("run_pure_state_check: config mode is not pure-states");
  }
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult out;
  out.summary.mode = cfg.mode;
  out.summary.master_seed = cfg.master_seed;

  for (const auto& [m, n] : cfg.dims) {
    const std::int64_t count = resolved_samples(cfg, m, n);
    const MubPair mub_a(computational_basis(m), fourier_basis(m));
    const MubPair mub_b(computational_basis(n), fourier_basis(n));
    std::vector<SampleRecord> block(static_cast<std::size_t>(count));

    parallel_for_indexed(count, cfg.workers, [&, m = m, n = n](std::int64_t i) {
      RandomStream rng = sample_stream(cfg.master_seed, cfg.mode, m, n, i);
      DensityMatrix rho = random_pure_state(m, n, rng);
      const ProjectiveBasis qa(haar_unitary(m, rng));
      const ProjectiveBasis ra(haar_unitary(m, rng));
      const ProjectiveBasis qb(haar_unitary(n, rng));
      const ProjectiveBasis rb(haar_unitary(n, rng));
      const CqcReport rep = evaluate_bases(rho, qa, ra, qb, rb);
      SampleRecord& rec = block[std::size_t(i)];
      rec.dim_a = m;
      rec.dim_b = n;
      rec.index = i;
      rec.mi_sum = rep.mi_sum;
      rec.qmi = rep.qmi;
      rec.gap = rep.gap;
      rec.residual_a = residual_uncertainty(rho, Side::A, mub_a.q, mub_a.r);
      rec.residual_b = residual_uncertainty(rho, Side::B, mub_b.q, mub_b.r);
      rec.entangled_witness = rep.entangled_witness;
      rec.witness_side = rep.witness_side;
      rec.steering_witness = rep.steering_witness;
      if (rec.gap < kCounterexampleGap) {
        nlohmann::json bases;
        bases["basis_qa"] = detail::matrix_json(qa.columns());
        bases["basis_ra"] = detail::matrix_json(ra.columns());
        bases["basis_qb"] = detail::matrix_json(qb.columns());
        bases["basis_rb"] = detail::matrix_json(rb.columns());
        detail::dump_candidate(cfg.dump_dir, cfg, rec, rho, bases);
      }
      if (rec.gap < kPureGapFloor) {
        throw InternalConsistencyError(
            "pure-state check: gap " + std::to_string(rec.gap) + " at " +
            std::to_string(m) + "x" + std::to_string(n) + " index " +
            std::to_string(i) + " contradicts the pure-state theorem");
      }
    });

    DimSummary dim;
    dim.dim_a = m;
    dim.dim_b = n;
    for (const SampleRecord& rec : block) detail::fold_into(dim, rec);
    detail::seal(dim);
    out.summary.per_dim.push_back(dim);
    out.records.insert(out.records.end(), block.begin(), block.end());
  }

  detail::fold_totals(out.summary);
  out.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

struct WernerSweepRecord {
  double eta = 0.0;
  double qmi = 0.0;
  double mi_sum = 0.0;
  double berta_bound = 0.0;  // side A
  double residual_a = 0.0;
};

// Uniform eta grid over [0, 1] at fixed p, measured with the sigma_x /
// sigma_y pair on both qubits.
inline std::vector<WernerSweepRecord> run_werner_sweep(double p,
                                                       Index eta_grid) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigInvalid("werner sweep: p must lie in [0, 1]");
  }
  if (eta_grid < 2) throw ConfigInvalid("werner sweep: grid must be >= 2");
  const BasisQuadruple quad = pauli_quadruple(Pauli::X, Pauli::Y);
  std::vector<WernerSweepRecord> rows;
  rows.reserve(std::size_t(eta_grid));
  for (Index i = 0; i < eta_grid; ++i) {
    const double eta = double(i) / double(eta_grid - 1);
    const DensityMatrix rho = asymmetric_werner(WernerParams{p, eta});
    const CqcReport rep = evaluate(rho, quad);
    rows.push_back(WernerSweepRecord{eta, rep.qmi, rep.mi_sum,
                                     rep.berta_bound_a, rep.residual_a});
  }
  return rows;
}

}  // namespace cqc
