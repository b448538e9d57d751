#pragma once

// Dense complex linear algebra for small bipartite systems: products,
// adjoints, Kronecker products, traces, partial traces and Hermitian
// eigendecomposition. Everything here is a pure function; Eigen does the
// heavy lifting behind a checked interface.

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "cqc/errors.hpp"

namespace cqc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Side { A, B };

inline const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

// Tolerances used across the library.
constexpr double kHermitianTol = 1e-9;   // ||a - a^dag||_max
constexpr double kUnitaryTol = 1e-10;    // ||V^dag V - I||_max
constexpr double kTraceTol = 1e-9;       // |tr(rho) - 1|
constexpr double kEigenClipTol = 1e-9;   // eigenvalues in [-tol, 0) clip to 0
constexpr double kMubTol = 1e-9;         // | |<q_i|r_j>|^2 - 1/d |
constexpr double kProbClipTol = 1e-12;   // probabilities in [-tol, 0) clip to 0

inline double max_abs(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

inline bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

inline ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

inline ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  return a * b;
}

inline Complex trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("trace requires a square matrix");
  }
  return a.trace();
}

// Kronecker product; block (i,j) of the result is a(i,j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Partial trace of a joint operator over one subsystem. The joint index
// convention is k = i*dim_b + j (subsystem A is the slow index); every
// module in the library relies on this ordering.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Index dim_a,
                                   Index dim_b, Side keep) {
  if (rho.rows() != rho.cols() || rho.rows() != dim_a * dim_b) {
    throw DimensionMismatch(
        "partial_trace: matrix side " + std::to_string(rho.rows()) +
        " does not equal dim_a*dim_b = " + std::to_string(dim_a * dim_b));
  }
  if (keep == Side::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index k = 0; k < dim_a; ++k)
        for (Index j = 0; j < dim_b; ++j)
          out(i, k) += rho(i * dim_b + j, k * dim_b + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index j = 0; j < dim_b; ++j)
    for (Index l = 0; l < dim_b; ++l)
      for (Index i = 0; i < dim_a; ++i)
        out(j, l) += rho(i * dim_b + j, i * dim_b + l);
  return out;
}

struct HermitianEigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // unit-norm columns, matching order
};

// Eigendecomposition of a Hermitian matrix. Inputs within kHermitianTol of
// Hermitian are symmetrized by averaging with their adjoint first, which
// strips accumulation noise from upstream products.
inline HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("hermitian_eig requires a square matrix");
  }
  const double asym = max_abs(a - a.adjoint());
  if (!(asym <= kHermitianTol)) {
    throw NotHermitian("hermitian_eig: ||a - a^dag||_max = " +
                       std::to_string(asym));
  }
  ComplexMatrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("hermitian_eig: solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace cqc
