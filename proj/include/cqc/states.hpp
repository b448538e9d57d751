#pragma once

// Bipartite density matrices: named state families, random sampling and
// unitary perturbations. Basis ordering throughout: index 0 is the +1
// eigenstate of sigma_z ("up"), and joint index k = i*dim_b + j.

#include <cmath>
#include <string>
#include <utility>

#include "cqc/errors.hpp"
#include "cqc/linalg.hpp"
#include "cqc/rng.hpp"

namespace cqc {

// A trace-one Hermitian matrix tagged with its bipartition (dim_a, dim_b).
// Construction checks shape, finiteness, Hermiticity and trace; matrices
// within kHermitianTol of Hermitian are symmetrized on the way in. The
// positivity invariant is enforced where the spectrum is actually taken
// (entropy evaluation and validate_spectrum), since it needs an
// eigendecomposition.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix m, Index dim_a, Index dim_b)
      : dim_a_(dim_a), dim_b_(dim_b) {
    if (dim_a < 1 || dim_b < 1) {
      throw DimensionMismatch("DensityMatrix: dimensions must be >= 1");
    }
    if (m.rows() != m.cols() || m.rows() != dim_a * dim_b) {
      throw DimensionMismatch(
          "DensityMatrix: side " + std::to_string(m.rows()) +
          " does not match bipartition " + std::to_string(dim_a) + "x" +
          std::to_string(dim_b));
    }
    if (!all_finite(m)) throw NotAState("DensityMatrix: non-finite entries");
    const double asym = max_abs(m - m.adjoint());
    if (!(asym <= kHermitianTol)) {
      throw NotAState("DensityMatrix: not Hermitian, deviation " +
                      std::to_string(asym));
    }
    const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
    if (!(tr_err <= kTraceTol)) {
      throw NotAState("DensityMatrix: trace off by " + std::to_string(tr_err));
    }
    matrix_ = (m + m.adjoint()) / 2.0;
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index side() const { return dim_a_ * dim_b_; }

  ComplexMatrix reduced(Side keep) const {
    return partial_trace(matrix_, dim_a_, dim_b_, keep);
  }

  // Full invariant check including positivity of the spectrum.
  void validate_spectrum() const {
    const auto eig = hermitian_eig(matrix_);
    if (eig.eigenvalues.minCoeff() < -kEigenClipTol) {
      throw NotAState("DensityMatrix: negative eigenvalue " +
                      std::to_string(eig.eigenvalues.minCoeff()));
    }
  }

 private:
  ComplexMatrix matrix_;
  Index dim_a_;
  Index dim_b_;
};

struct WernerParams {
  double p = 0.0;    // weight of the partially entangled singlet
  double eta = 0.5;  // asymmetry of the singlet amplitudes
};

enum class MixtureFamily { BellWithMcm, McmWithMm };

inline const char* family_name(MixtureFamily f) {
  return f == MixtureFamily::BellWithMcm ? "bell-with-mcm" : "mcm-with-mm";
}

struct BoundaryMixtureSpec {
  MixtureFamily family = MixtureFamily::BellWithMcm;
  double lambda = 1.0;  // weight of the first component
  Index n = 2;          // local dimension of the N x N system
};

// p |psi><psi| + (1-p) I/4 with |psi> = sqrt(eta)|01> - sqrt(1-eta)|10>.
inline DensityMatrix asymmetric_werner(const WernerParams& params) {
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw ParamOutOfRange("asymmetric_werner: p = " + std::to_string(params.p));
  }
  if (!(params.eta >= 0.0 && params.eta <= 1.0)) {
    throw ParamOutOfRange("asymmetric_werner: eta = " +
                          std::to_string(params.eta));
  }
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = std::sqrt(params.eta);
  psi(2) = -std::sqrt(1.0 - params.eta);
  ComplexMatrix m = params.p * (psi * psi.adjoint()) +
                    (1.0 - params.p) / 4.0 * ComplexMatrix::Identity(4, 4);
  return DensityMatrix(std::move(m), 2, 2);
}

// (1/sqrt(n)) sum_i |i,i> as a density matrix.
inline DensityMatrix bell_phi_plus(Index n) {
  if (n < 2) throw ParamOutOfRange("bell_phi_plus: n must be >= 2");
  ComplexVector psi = ComplexVector::Zero(n * n);
  for (Index i = 0; i < n; ++i) psi(i * n + i) = 1.0 / std::sqrt(double(n));
  return DensityMatrix(psi * psi.adjoint(), n, n);
}

// (1/n) sum_i |i,i><i,i| : perfectly correlated, no coherence.
inline DensityMatrix mcm_state(Index n) {
  if (n < 2) throw ParamOutOfRange("mcm_state: n must be >= 2");
  ComplexMatrix m = ComplexMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) m(i * n + i, i * n + i) = 1.0 / double(n);
  return DensityMatrix(std::move(m), n, n);
}

inline DensityMatrix maximally_mixed(Index m, Index n) {
  if (m < 1 || n < 1) throw ParamOutOfRange("maximally_mixed: dims must be >= 1");
  return DensityMatrix(
      ComplexMatrix::Identity(m * n, m * n) / double(m * n), m, n);
}

inline DensityMatrix boundary_mixture(const BoundaryMixtureSpec& spec) {
  if (!(spec.lambda >= 0.0 && spec.lambda <= 1.0)) {
    throw ParamOutOfRange("boundary_mixture: lambda = " +
                          std::to_string(spec.lambda));
  }
  if (spec.n < 2) throw ParamOutOfRange("boundary_mixture: n must be >= 2");
  const DensityMatrix first = spec.family == MixtureFamily::BellWithMcm
                                  ? bell_phi_plus(spec.n)
                                  : mcm_state(spec.n);
  const DensityMatrix second = spec.family == MixtureFamily::BellWithMcm
                                   ? mcm_state(spec.n)
                                   : maximally_mixed(spec.n, spec.n);
  ComplexMatrix m = spec.lambda * first.matrix() +
                    (1.0 - spec.lambda) * second.matrix();
  return DensityMatrix(std::move(m), spec.n, spec.n);
}

// Unitary drawn from the Haar measure: QR of a matrix of independent
// standard complex Gaussians, with each column of Q rephased by
// conj(R_kk)/|R_kk| so the distribution is exactly invariant.
inline ComplexMatrix haar_unitary(Index dim, RandomStream& rng) {
  if (dim < 1) throw ParamOutOfRange("haar_unitary: dim must be >= 1");
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Index k = 0; k < dim; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    const Complex phase = mag > 0.0 ? std::conj(rkk) / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

// |psi><psi| with |psi> a normalized vector of independent complex Gaussians.
inline DensityMatrix random_pure_state(Index dim_a, Index dim_b,
                                       RandomStream& rng) {
  if (dim_a < 1 || dim_b < 1) {
    throw ParamOutOfRange("random_pure_state: dims must be >= 1");
  }
  ComplexVector psi(dim_a * dim_b);
  for (Index i = 0; i < psi.size(); ++i) psi(i) = rng.complex_normal();
  psi.normalize();
  return DensityMatrix(psi * psi.adjoint(), dim_a, dim_b);
}

// V diag(lambda) V^dag with lambda uniform on the probability simplex
// (normalized unit-rate exponentials) and V Haar.
inline DensityMatrix random_density_matrix(Index dim_a, Index dim_b,
                                           RandomStream& rng) {
  if (dim_a < 1 || dim_b < 1) {
    throw ParamOutOfRange("random_density_matrix: dims must be >= 1");
  }
  const Index d = dim_a * dim_b;
  RealVector lambda(d);
  double sum = 0.0;
  for (Index i = 0; i < d; ++i) {
    lambda(i) = rng.exponential();
    sum += lambda(i);
  }
  lambda /= sum;
  if (d == 1) return DensityMatrix(ComplexMatrix::Identity(1, 1), 1, 1);
  ComplexMatrix v = haar_unitary(d, rng);
  ComplexMatrix m = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  return DensityMatrix(std::move(m), dim_a, dim_b);
}

// U rho U^dag with U = exp(i epsilon H); H is a Hermitized matrix of
// complex Gaussians with entries scaled by 1/sqrt(dim). Spectrum-preserving.
inline DensityMatrix perturb(const DensityMatrix& rho, double epsilon,
                             RandomStream& rng) {
  if (!(epsilon >= 0.0)) {
    throw ParamOutOfRange("perturb: epsilon must be >= 0");
  }
  const Index d = rho.side();
  const double scale = 1.0 / std::sqrt(double(d));
  ComplexMatrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = scale * rng.complex_normal();
  ComplexMatrix h = (g + g.adjoint()) / 2.0;
  const auto eig = hermitian_eig(h);
  ComplexVector phases(d);
  for (Index k = 0; k < d; ++k) {
    phases(k) = std::exp(Complex(0.0, epsilon * eig.eigenvalues(k)));
  }
  ComplexMatrix u = eig.eigenvectors * phases.asDiagonal() *
                    eig.eigenvectors.adjoint();
  ComplexMatrix m = u * rho.matrix() * u.adjoint();
  return DensityMatrix(std::move(m), rho.dim_a(), rho.dim_b());
}

}  // namespace cqc
