#pragma once

// Projective measurements and the classical joint distributions they induce
// on a bipartite state. A basis is stored as the unitary whose columns are
// the measurement vectors; outcome j corresponds to column j.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "cqc/errors.hpp"
#include "cqc/linalg.hpp"
#include "cqc/states.hpp"

namespace cqc {

using ProbabilityVector = RealVector;

class ProjectiveBasis {
 public:
  explicit ProjectiveBasis(ComplexMatrix columns) {
    if (columns.rows() != columns.cols() || columns.rows() < 1) {
      throw DimensionMismatch("ProjectiveBasis: matrix must be square");
    }
    if (!all_finite(columns)) {
      throw NotUnitary("ProjectiveBasis: non-finite entries");
    }
    const double dev = max_abs(
        (columns.adjoint() * columns - ComplexMatrix::Identity(
             columns.rows(), columns.cols())).eval());
    if (!(dev <= kUnitaryTol)) {
      throw NotUnitary("ProjectiveBasis: columns not orthonormal, deviation " +
                       std::to_string(dev));
    }
    columns_ = std::move(columns);
  }

  const ComplexMatrix& columns() const { return columns_; }
  Index dim() const { return columns_.rows(); }
  ComplexVector vector(Index j) const { return columns_.col(j); }

 private:
  ComplexMatrix columns_;
};

inline ProjectiveBasis computational_basis(Index dim) {
  if (dim < 1) throw ParamOutOfRange("computational_basis: dim must be >= 1");
  return ProjectiveBasis(ComplexMatrix::Identity(dim, dim));
}

// F(j,k) = exp(2 pi i j k / dim) / sqrt(dim).
inline ProjectiveBasis fourier_basis(Index dim) {
  if (dim < 1) throw ParamOutOfRange("fourier_basis: dim must be >= 1");
  ComplexMatrix f(dim, dim);
  const double norm = 1.0 / std::sqrt(double(dim));
  for (Index j = 0; j < dim; ++j) {
    for (Index k = 0; k < dim; ++k) {
      const double arg = 2.0 * std::numbers::pi * double(j) * double(k) /
                         double(dim);
      f(j, k) = norm * Complex(std::cos(arg), std::sin(arg));
    }
  }
  return ProjectiveBasis(std::move(f));
}

// The Fourier transform of an arbitrary basis, which is always unbiased
// with respect to it: columns B * F.
inline ProjectiveBasis conjugate_basis(const ProjectiveBasis& b) {
  const ProjectiveBasis f = fourier_basis(b.dim());
  return ProjectiveBasis(b.columns() * f.columns());
}

enum class Pauli { X, Y, Z };

// Qubit eigenbases with the +1 eigenvector in column 0.
inline ProjectiveBasis pauli_basis(Pauli which) {
  ComplexMatrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case Pauli::X:
      m << Complex(s), Complex(s), Complex(s), Complex(-s);
      break;
    case Pauli::Y:
      m << Complex(s), Complex(s), Complex(0.0, s), Complex(0.0, -s);
      break;
    case Pauli::Z:
      m = ComplexMatrix::Identity(2, 2);
      break;
  }
  return ProjectiveBasis(std::move(m));
}

// True when every overlap satisfies |<q_j|r_k>|^2 = 1/dim within tol.
inline bool is_mutually_unbiased(const ProjectiveBasis& q,
                                 const ProjectiveBasis& r,
                                 double tol = kMubTol) {
  if (q.dim() != r.dim()) {
    throw DimensionMismatch("is_mutually_unbiased: dimension mismatch");
  }
  const Index d = q.dim();
  const ComplexMatrix overlaps = q.columns().adjoint() * r.columns();
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) {
      const double sq = std::norm(overlaps(j, k));
      if (std::abs(sq - 1.0 / double(d)) > tol) return false;
    }
  }
  return true;
}

// A measurement pair for one party, checked unbiased at construction.
struct MubPair {
  ProjectiveBasis q;
  ProjectiveBasis r;

  MubPair(ProjectiveBasis q_in, ProjectiveBasis r_in)
      : q(std::move(q_in)), r(std::move(r_in)) {
    if (!is_mutually_unbiased(q, r)) {
      throw MubViolation("MubPair: bases are not mutually unbiased");
    }
  }
};

// P(j,k) for outcome j on A and k on B. Entries are clipped at zero (small
// negatives within kProbClipTol come from roundoff) and renormalized.
class JointDistribution {
 public:
  explicit JointDistribution(Eigen::MatrixXd table) {
    if (table.rows() < 1 || table.cols() < 1) {
      throw InvalidDistribution("JointDistribution: empty table");
    }
    if (!table.allFinite()) {
      throw InvalidDistribution("JointDistribution: non-finite entries");
    }
    const double lo = table.minCoeff();
    if (lo < -kProbClipTol) {
      throw InvalidDistribution("JointDistribution: negative probability " +
                                std::to_string(lo));
    }
    table = table.cwiseMax(0.0);
    const double total = table.sum();
    if (!(std::abs(total - 1.0) <= 1e-9)) {
      throw InvalidDistribution("JointDistribution: total probability " +
                                std::to_string(total));
    }
    table_ = table / total;
  }

  const Eigen::MatrixXd& table() const { return table_; }
  Index outcomes_a() const { return table_.rows(); }
  Index outcomes_b() const { return table_.cols(); }

  ProbabilityVector marginal_a() const { return table_.rowwise().sum(); }
  ProbabilityVector marginal_b() const { return table_.colwise().sum(); }

 private:
  Eigen::MatrixXd table_;
};

// Measure basis_a on A and basis_b on B: P(j,k) = <a_j b_k| rho |a_j b_k>.
inline JointDistribution joint_distribution(const DensityMatrix& rho,
                                            const ProjectiveBasis& basis_a,
                                            const ProjectiveBasis& basis_b) {
  if (basis_a.dim() != rho.dim_a() || basis_b.dim() != rho.dim_b()) {
    throw DimensionMismatch("joint_distribution: basis dims " +
                            std::to_string(basis_a.dim()) + "x" +
                            std::to_string(basis_b.dim()) +
                            " do not match state " +
                            std::to_string(rho.dim_a()) + "x" +
                            std::to_string(rho.dim_b()));
  }
  const ComplexMatrix joint = kron(basis_a.columns(), basis_b.columns());
  const ComplexVector diag =
      (joint.adjoint() * rho.matrix() * joint).diagonal();
  Eigen::MatrixXd table(rho.dim_a(), rho.dim_b());
  for (Index i = 0; i < rho.dim_a(); ++i) {
    for (Index j = 0; j < rho.dim_b(); ++j) {
      const Complex p = diag(i * rho.dim_b() + j);
      if (std::abs(p.imag()) > kProbClipTol) {
        throw InternalConsistencyError(
            "joint_distribution: complex probability, imag " +
            std::to_string(p.imag()));
      }
      if (p.real() < -kProbClipTol) {
        throw InternalConsistencyError(
            "joint_distribution: negative probability " +
            std::to_string(p.real()));
      }
      table(i, j) = p.real() < 0.0 ? 0.0 : p.real();
    }
  }
  return JointDistribution(std::move(table));
}

}  // namespace cqc
