#pragma once

// The correlation bound and its companions. Central quantity: for a pair of
// measurement bases per party, each pair mutually unbiased,
//
//   mi_sum = H(Qa:Qb) + H(Ra:Rb)   and   gap = I(A:B) - mi_sum.
//
// The conjecture under test is gap >= 0 for every state. Derived from the
// same measurement data: per-party classical bounds, residual uncertainties,
// an eavesdropper information bound with a key rate, and correlation
// witnesses (the witness interpretations hold conditional on the
// conjecture).

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cqc/errors.hpp"
#include "cqc/information.hpp"
#include "cqc/linalg.hpp"
#include "cqc/measurement.hpp"
#include "cqc/states.hpp"

namespace cqc {

constexpr double kWitnessTol = 1e-9;

// Two unbiased measurement pairs, one per party; qa/ra act on A, qb/rb on B.
// MubPair construction enforces the unbiasedness invariant, throwing
// MubViolation, so a live quadruple is always valid.
struct BasisQuadruple {
  MubPair a;
  MubPair b;

  const ProjectiveBasis& qa() const { return a.q; }
  const ProjectiveBasis& ra() const { return a.r; }
  const ProjectiveBasis& qb() const { return b.q; }
  const ProjectiveBasis& rb() const { return b.r; }
};

inline BasisQuadruple comp_fourier_quadruple(Index dim_a, Index dim_b) {
  return BasisQuadruple{
      MubPair(computational_basis(dim_a), fourier_basis(dim_a)),
      MubPair(computational_basis(dim_b), fourier_basis(dim_b))};
}

// Same Pauli pair on both qubits, e.g. (X, Y) or (Z, X).
inline BasisQuadruple pauli_quadruple(Pauli q, Pauli r) {
  return BasisQuadruple{MubPair(pauli_basis(q), pauli_basis(r)),
                        MubPair(pauli_basis(q), pauli_basis(r))};
}

struct CqcReport {
  Index dim_a = 0;
  Index dim_b = 0;

  double mi_qq = 0.0;     // H(Qa:Qb)
  double mi_rr = 0.0;     // H(Ra:Rb)
  double mi_sum = 0.0;    // mi_qq + mi_rr
  double qmi = 0.0;       // I(A:B)
  double gap = 0.0;       // qmi - mi_sum

  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double s_cond_a = 0.0;  // S(A|B)
  double s_cond_b = 0.0;  // S(B|A)

  double h_q_a = 0.0;     // H(Qa), and so on
  double h_r_a = 0.0;
  double h_q_b = 0.0;
  double h_r_b = 0.0;

  double berta_bound_a = 0.0;
  double berta_bound_b = 0.0;
  double residual_a = 0.0;
  double residual_b = 0.0;

  double eve_bound = 0.0;        // 2 log2(dim_a) - mi_sum, the headline form
  double eve_bound_tight = 0.0;  // 2 S(A) - mi_sum, tighter when S(A) known
  double key_rate_lower = 0.0;   // min over parties of max(0, 2(mi_sum - log2 dim))

  double entanglement_margin = 0.0;  // mi_sum - min marginal outcome entropy
  bool entangled_witness = false;
  Side witness_side = Side::A;       // party whose outcome entropy is the min

  double steering_margin = 0.0;      // mi_sum - log2 max(M, N)
  bool steering_witness = false;
};

// Outcome distribution of one basis on a reduced state.
namespace detail {
inline ProbabilityVector outcome_distribution(const ComplexMatrix& reduced,
                                              const ProjectiveBasis& basis) {
  if (basis.dim() != reduced.rows()) {
    throw DimensionMismatch("outcome_distribution: basis dim " +
                            std::to_string(basis.dim()) + " vs state dim " +
                            std::to_string(reduced.rows()));
  }
  const ComplexVector diag =
      (basis.columns().adjoint() * reduced * basis.columns()).diagonal();
  ProbabilityVector p(diag.size());
  for (Index i = 0; i < diag.size(); ++i) {
    if (diag(i).real() < -kProbClipTol ||
        std::abs(diag(i).imag()) > kProbClipTol) {
      throw InternalConsistencyError(
          "outcome_distribution: invalid probability");
    }
    p(i) = std::max(diag(i).real(), 0.0);
  }
  return p;
}
}  // namespace detail

// H(Q) + H(R) - log2(dim) - S(side): the slack of the entropic uncertainty
// relation for the pair (q, r) on that side. Nonnegative whenever the pair
// is mutually unbiased.
inline double residual_uncertainty(const DensityMatrix& rho, Side side,
                                   const ProjectiveBasis& q,
                                   const ProjectiveBasis& r) {
  const ComplexMatrix reduced = rho.reduced(side);
  if (q.dim() != reduced.rows() || r.dim() != reduced.rows()) {
    throw DimensionMismatch("residual_uncertainty: basis dims " +
                            std::to_string(q.dim()) + "," +
                            std::to_string(r.dim()) + " vs side dim " +
                            std::to_string(reduced.rows()));
  }
  const double h_q = shannon_entropy(detail::outcome_distribution(reduced, q));
  const double h_r = shannon_entropy(detail::outcome_distribution(reduced, r));
  return h_q + h_r - std::log2(double(reduced.rows())) -
         von_neumann_entropy(reduced);
}

// Ceiling on an eavesdropper's information about the key basis, from the
// observed correlations alone: 2 log2(dim_a) - mi_sum. Deliberately not
// clamped; it is an upper bound and may exceed physical maxima.
inline double eve_information_bound(double mi_sum, Index dim_a) {
  if (!(mi_sum >= 0.0)) {
    throw ParamOutOfRange("eve_information_bound: mi_sum must be >= 0");
  }
  if (dim_a < 1) {
    throw ParamOutOfRange("eve_information_bound: dim must be >= 1");
  }
  return 2.0 * std::log2(double(dim_a)) - mi_sum;
}

// Guaranteed key bits per state for one party: max(0, 2(mi_sum - log2 dim)).
inline double key_rate_lower_bound(double mi_sum, Index dim) {
  if (!(mi_sum >= 0.0)) {
    throw ParamOutOfRange("key_rate_lower_bound: mi_sum must be >= 0");
  }
  if (dim < 1) throw ParamOutOfRange("key_rate_lower_bound: dim must be >= 1");
  return std::max(0.0, 2.0 * (mi_sum - std::log2(double(dim))));
}

// mi_sum exceeding the smallest marginal outcome entropy is impossible for
// separable states (conditional on the gap conjecture).
inline bool entanglement_witness(double mi_sum, double h_q_a, double h_r_a,
                                 double h_q_b, double h_r_b) {
  const double least = std::min(std::min(h_q_a, h_r_a), std::min(h_q_b, h_r_b));
  return mi_sum > least + kWitnessTol;
}

// mi_sum exceeding log2(dim) witnesses steering of the dim-sized party
// (same conditionality). Both parties must pass for the symmetric claim.
inline bool steering_witness(double mi_sum, Index dim) {
  if (dim < 1) throw ParamOutOfRange("steering_witness: dim must be >= 1");
  return mi_sum > std::log2(double(dim)) + kWitnessTol;
}

// Core evaluation on four explicit bases. No unbiasedness requirement here;
// the typed entry point below gets that from MubPair. The *_bound and
// residual fields are computed from the same formulas either way, but their
// guarantees only hold for unbiased pairs.
inline CqcReport evaluate_bases(const DensityMatrix& rho,
                                const ProjectiveBasis& qa,
                                const ProjectiveBasis& ra,
                                const ProjectiveBasis& qb,
                                const ProjectiveBasis& rb) {
  CqcReport rep;
  rep.dim_a = rho.dim_a();
  rep.dim_b = rho.dim_b();

  const JointDistribution dist_q = joint_distribution(rho, qa, qb);
  const JointDistribution dist_r = joint_distribution(rho, ra, rb);

  rep.mi_qq = classical_mutual_information(dist_q);
  rep.mi_rr = classical_mutual_information(dist_r);
  rep.mi_sum = rep.mi_qq + rep.mi_rr;

  rep.s_a = von_neumann_entropy(rho.reduced(Side::A));
  rep.s_b = von_neumann_entropy(rho.reduced(Side::B));
  rep.s_ab = von_neumann_entropy(rho.matrix());
  rep.qmi = rep.s_a + rep.s_b - rep.s_ab;
  if (rep.qmi < -kEigenClipTol) {
    throw InternalConsistencyError("evaluate: negative mutual information " +
                                   std::to_string(rep.qmi));
  }
  rep.qmi = std::max(rep.qmi, 0.0);
  rep.gap = rep.qmi - rep.mi_sum;
  rep.s_cond_a = rep.s_ab - rep.s_b;
  rep.s_cond_b = rep.s_ab - rep.s_a;

  rep.h_q_a = shannon_entropy(dist_q.marginal_a());
  rep.h_q_b = shannon_entropy(dist_q.marginal_b());
  rep.h_r_a = shannon_entropy(dist_r.marginal_a());
  rep.h_r_b = shannon_entropy(dist_r.marginal_b());

  const double log_m = std::log2(double(rep.dim_a));
  const double log_n = std::log2(double(rep.dim_b));

  rep.berta_bound_a = rep.s_a + log_m -
                      classical_conditional_entropy(dist_q, Side::B) -
                      classical_conditional_entropy(dist_r, Side::B);
  rep.berta_bound_b = rep.s_b + log_n -
                      classical_conditional_entropy(dist_q, Side::A) -
                      classical_conditional_entropy(dist_r, Side::A);
  rep.residual_a = rep.h_q_a + rep.h_r_a - log_m - rep.s_a;
  rep.residual_b = rep.h_q_b + rep.h_r_b - log_n - rep.s_b;

  rep.eve_bound = eve_information_bound(rep.mi_sum, rep.dim_a);
  rep.eve_bound_tight = 2.0 * rep.s_a - rep.mi_sum;
  rep.key_rate_lower = std::min(key_rate_lower_bound(rep.mi_sum, rep.dim_a),
                                key_rate_lower_bound(rep.mi_sum, rep.dim_b));

  const double outcome_entropies[4] = {rep.h_q_a, rep.h_r_a, rep.h_q_b,
                                       rep.h_r_b};
  int arg_min = 0;
  for (int i = 1; i < 4; ++i) {
    if (outcome_entropies[i] < outcome_entropies[arg_min]) arg_min = i;
  }
  rep.witness_side = arg_min < 2 ? Side::A : Side::B;
  rep.entanglement_margin = rep.mi_sum - outcome_entropies[arg_min];
  rep.entangled_witness = entanglement_witness(rep.mi_sum, rep.h_q_a,
                                               rep.h_r_a, rep.h_q_b,
                                               rep.h_r_b);

  rep.steering_margin = rep.mi_sum - std::max(log_m, log_n);
  rep.steering_witness = steering_witness(rep.mi_sum, rep.dim_a) &&
                         steering_witness(rep.mi_sum, rep.dim_b);

  return rep;
}

inline CqcReport evaluate(const DensityMatrix& rho,
                          const BasisQuadruple& quad) {
  return evaluate_bases(rho, quad.qa(), quad.ra(), quad.qb(), quad.rb());
}

// Per-party classical bound: S(s) + log2(dim_s) - H(Q_s|Q_o) - H(R_s|R_o)
// with o the other party. Never exceeds mi_sum for unbiased pairs; the
// difference is exactly residual_uncertainty(s).
inline double berta_classical_bound(const DensityMatrix& rho,
                                    const BasisQuadruple& quad, Side side) {
  const CqcReport rep = evaluate(rho, quad);
  return side == Side::A ? rep.berta_bound_a : rep.berta_bound_b;
}

}  // namespace cqc
