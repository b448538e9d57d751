#pragma once

// Normative text output: CSV schemas (exact headers, 9 significant digits,
// LF line endings) and fixed-field-order text reports. Everything here is
// deterministic given its inputs except the wall_seconds line of a summary.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cqc/bounds.hpp"
#include "cqc/errors.hpp"
#include "cqc/search.hpp"

namespace cqc {

// 9 significant digits, shortest form (matches printf %.9g).
inline std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

inline const char* fmt_bool(bool b) { return b ? "true" : "false"; }

// schema: dim_a,dim_b,index,cqc_sum,qmi,gap (uniform search + pure check)
inline void write_search_csv(std::ostream& out,
                             const std::vector<SampleRecord>& records) {
  out << "dim_a,dim_b,index,cqc_sum,qmi,gap\n";
  for (const SampleRecord& r : records) {
    out << r.dim_a << ',' << r.dim_b << ',' << r.index << ','
        << fmt9(r.mi_sum) << ',' << fmt9(r.qmi) << ',' << fmt9(r.gap)
        << '\n';
  }
}

// schema: n,family,lambda,epsilon,cqc_sum,qmi (boundary perturbation)
inline void write_scatter_csv(std::ostream& out,
                              const std::vector<SampleRecord>& records) {
  out << "n,family,lambda,epsilon,cqc_sum,qmi\n";
  for (const SampleRecord& r : records) {
    out << r.dim_a << ',' << family_name(r.family) << ',' << fmt9(r.lambda)
        << ',' << fmt9(r.epsilon) << ',' << fmt9(r.mi_sum) << ','
        << fmt9(r.qmi) << '\n';
  }
}

// schema: eta,qmi,cqc_sum,berta_bound,residual_a (Werner sweep)
inline void write_werner_csv(std::ostream& out,
                             const std::vector<WernerSweepRecord>& rows) {
  out << "eta,qmi,cqc_sum,berta_bound,residual_a\n";
  for (const WernerSweepRecord& r : rows) {
    out << fmt9(r.eta) << ',' << fmt9(r.qmi) << ',' << fmt9(r.mi_sum) << ','
        << fmt9(r.berta_bound) << ',' << fmt9(r.residual_a) << '\n';
  }
}

inline std::string summary_text(const SearchSummary& s) {
  std::ostringstream out;
  out << "mode: " << mode_name(s.mode) << '\n';
  out << "master_seed: " << s.master_seed << '\n';
  if (s.mode == SearchMode::PureStates) {
    out << "bases: independent Haar-random quadruple per sample"
           " (not unbiased pairs); residuals use computational/Fourier\n";
  } else {
    out << "bases: computational/Fourier pair on each party\n";
  }
  if (s.mode == SearchMode::Uniform) {
    out << "measure: spectrum uniform on the probability simplex,"
           " eigenvectors Haar\n";
  } else if (s.mode == SearchMode::PureStates) {
    out << "measure: Haar (Gaussian amplitudes, normalized)\n";
  } else {
    out << "measure: lambda uniform grid; epsilon log-uniform plus an exact"
           " epsilon=0 record per cell; Haar-generator perturbations\n";
  }
  out << "dims:\n";
  for (const DimSummary& d : s.per_dim) {
    out << "  " << d.dim_a << "x" << d.dim_b << ": samples=" << d.samples
        << " min_gap=" << fmt9(d.min_gap)
        << " counterexamples=" << d.counterexamples
        << " noise_negatives=" << d.noise_negatives
        << " mean_residual_a=" << fmt9(d.mean_residual_a)
        << " min_residual_a=" << fmt9(d.min_residual_a)
        << " min_residual_b=" << fmt9(d.min_residual_b)
        << " witness_positives=" << d.witness_positives << '\n';
  }
  out << "total_samples: " << s.total_samples << '\n';
  out << "total_counterexamples: " << s.total_counterexamples << '\n';
  out << "total_noise_negatives: " << s.total_noise_negatives << '\n';
  out << "min_gap: " << fmt9(s.min_gap) << '\n';
  out << "wall_seconds: " << fmt9(s.wall_seconds) << '\n';
  out << "verdict: "
      << (s.total_counterexamples == 0
              ? "no counterexamples (consistent with the conjectured bound)"
              : "COUNTEREXAMPLE CANDIDATES FOUND - re-verify dumped states")
      << '\n';
  out << "note: witness counts assume the conjectured bound holds\n";
  return out.str();
}

// Labeled key-value report for a single state, fixed field order.
inline std::string report_text(const CqcReport& r,
                               const std::string& basis_label) {
  std::ostringstream out;
  out << "dim_a: " << r.dim_a << '\n';
  out << "dim_b: " << r.dim_b << '\n';
  out << "bases: " << basis_label << '\n';
  out << "mi_qq: " << fmt9(r.mi_qq) << '\n';
  out << "mi_rr: " << fmt9(r.mi_rr) << '\n';
  out << "mi_sum: " << fmt9(r.mi_sum) << '\n';
  out << "qmi: " << fmt9(r.qmi) << '\n';
  out << "gap: " << fmt9(r.gap) << '\n';
  out << "s_a: " << fmt9(r.s_a) << '\n';
  out << "s_b: " << fmt9(r.s_b) << '\n';
  out << "s_ab: " << fmt9(r.s_ab) << '\n';
  out << "s_cond_a: " << fmt9(r.s_cond_a) << '\n';
  out << "s_cond_b: " << fmt9(r.s_cond_b) << '\n';
  out << "h_q_a: " << fmt9(r.h_q_a) << '\n';
  out << "h_r_a: " << fmt9(r.h_r_a) << '\n';
  out << "h_q_b: " << fmt9(r.h_q_b) << '\n';
  out << "h_r_b: " << fmt9(r.h_r_b) << '\n';
  out << "berta_bound_a: " << fmt9(r.berta_bound_a) << '\n';
  out << "berta_bound_b: " << fmt9(r.berta_bound_b) << '\n';
  out << "residual_a: " << fmt9(r.residual_a) << '\n';
  out << "residual_b: " << fmt9(r.residual_b) << '\n';
  out << "eve_bound: " << fmt9(r.eve_bound) << '\n';
  out << "eve_bound_tight: " << fmt9(r.eve_bound_tight) << '\n';
  out << "key_rate_lower: " << fmt9(r.key_rate_lower) << '\n';
  out << "entanglement_margin: " << fmt9(r.entanglement_margin) << '\n';
  out << "entangled_witness: " << fmt_bool(r.entangled_witness) << '\n';
  out << "witness_side: " << (r.witness_side == Side::A ? 'A' : 'B') << '\n';
  out << "steering_margin: " << fmt9(r.steering_margin) << '\n';
  out << "steering_witness: " << fmt_bool(r.steering_witness) << '\n';
  out << "note: witness flags assume the conjectured bound holds\n";
  return out.str();
}

inline const char* report_csv_header() {
  return "dim_a,dim_b,mi_qq,mi_rr,cqc_sum,qmi,gap,berta_bound_a,"
         "berta_bound_b,residual_a,residual_b,eve_bound,eve_bound_tight,"
         "key_rate_lower,entangled_witness,steering_witness";
}

inline std::string report_csv_row(const CqcReport& r) {
  std::ostringstream out;
  out << r.dim_a << ',' << r.dim_b << ',' << fmt9(r.mi_qq) << ','
      << fmt9(r.mi_rr) << ',' << fmt9(r.mi_sum) << ',' << fmt9(r.qmi) << ','
      << fmt9(r.gap) << ',' << fmt9(r.berta_bound_a) << ','
      << fmt9(r.berta_bound_b) << ',' << fmt9(r.residual_a) << ','
      << fmt9(r.residual_b) << ',' << fmt9(r.eve_bound) << ','
      << fmt9(r.eve_bound_tight) << ',' << fmt9(r.key_rate_lower) << ','
      << fmt_bool(r.entangled_witness) << ',' << fmt_bool(r.steering_witness);
  return out.str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("error writing output file: " + path);
}

}  // namespace cqc
