#pragma once

// Entropic quantities, all in bits (log base 2).
//
// Clipping policy: probabilities and eigenvalues may land a hair below zero
// from floating-point roundoff. Values within the documented windows are
// clipped to zero and the vector renormalized; anything further negative is
// an error, not noise, and throws.

#include <cmath>
#include <string>

#include "cqc/errors.hpp"
#include "cqc/linalg.hpp"
#include "cqc/measurement.hpp"
#include "cqc/states.hpp"

namespace cqc {

namespace detail {

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Shared core: clip tiny negatives, renormalize, accumulate -sum p log2 p.
template <typename Thrower>
double entropy_of_weights(const RealVector& w, double clip_tol,
                          Thrower&& fail) {
  double sum = 0.0;
  for (Index i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w(i))) fail("non-finite weight");
    if (w(i) < -clip_tol) {
      fail("negative weight " + std::to_string(w(i)));
    }
    if (w(i) > 0.0) sum += w(i);
  }
  if (!(std::abs(sum - 1.0) <= kTraceTol)) {
    fail("weights sum to " + std::to_string(sum));
  }
  double h = 0.0;
  for (Index i = 0; i < w.size(); ++i) {
    if (w(i) > 0.0) h -= detail::xlog2x(w(i) / sum);
  }
  return h;
}

}  // namespace detail

inline double shannon_entropy(const ProbabilityVector& p) {
  return detail::entropy_of_weights(p, kProbClipTol, [](const std::string& m) {
    throw InvalidDistribution("shannon_entropy: " + m);
  });
}

// H(A:B) = H(A) + H(B) - H(A,B). Exact cancellation can leave a tiny
// negative; within kProbClipTol it is squashed to zero.
inline double classical_mutual_information(const JointDistribution& dist) {
  const Eigen::MatrixXd& t = dist.table();
  const RealVector flat =
      Eigen::Map<const RealVector>(t.data(), t.size());
  const double mi = shannon_entropy(dist.marginal_a()) +
                    shannon_entropy(dist.marginal_b()) -
                    shannon_entropy(flat);
  if (mi < -kProbClipTol) {
    throw InternalConsistencyError(
        "classical_mutual_information: negative value " + std::to_string(mi));
  }
  return mi < 0.0 ? 0.0 : mi;
}

// Conditional entropy of the other party's outcome given `given`:
// given = Side::B yields H(A|B) = H(A,B) - H(B).
inline double classical_conditional_entropy(const JointDistribution& dist,
                                            Side given) {
  const Eigen::MatrixXd& t = dist.table();
  const RealVector flat =
      Eigen::Map<const RealVector>(t.data(), t.size());
  const double joint = shannon_entropy(flat);
  const double cond =
      joint - shannon_entropy(given == Side::B ? dist.marginal_b()
                                               : dist.marginal_a());
  // H(X|Y) >= 0 classically; roundoff negatives get the same window.
  if (cond < -kProbClipTol) {
    throw InternalConsistencyError(
        "classical_conditional_entropy: negative value " +
        std::to_string(cond));
  }
  return cond < 0.0 ? 0.0 : cond;
}

// S(rho) = -tr rho log2 rho via the spectrum. Eigenvalues in
// [-kEigenClipTol, 0) are clipped; anything lower means the matrix is not a
// state.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
  const double tr_err = std::abs(trace(rho) - Complex(1.0, 0.0));
  if (!(tr_err <= kTraceTol)) {
    throw NotAState("von_neumann_entropy: trace off by " +
                    std::to_string(tr_err));
  }
  const auto eig = hermitian_eig(rho);
  return detail::entropy_of_weights(
      eig.eigenvalues, kEigenClipTol, [](const std::string& m) {
        throw NotAState("von_neumann_entropy: " + m);
      });
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

// I(A:B) = S(A) + S(B) - S(AB), nonnegative up to roundoff; the clip window
// here is kEigenClipTol since three spectra feed the cancellation.
inline double quantum_mutual_information(const DensityMatrix& rho) {
  const double qmi = von_neumann_entropy(rho.reduced(Side::A)) +
                     von_neumann_entropy(rho.reduced(Side::B)) -
                     von_neumann_entropy(rho.matrix());
  if (qmi < -kEigenClipTol) {
    throw InternalConsistencyError(
        "quantum_mutual_information: negative value " + std::to_string(qmi));
  }
  return qmi < 0.0 ? 0.0 : qmi;
}

// S(party | other) = S(AB) - S(other). Genuinely negative for entangled
// states, so no clipping.
inline double conditional_quantum_entropy(const DensityMatrix& rho,
                                          Side party) {
  const Side other = party == Side::A ? Side::B : Side::A;
  return von_neumann_entropy(rho.matrix()) -
         von_neumann_entropy(rho.reduced(other));
}

}  // namespace cqc
