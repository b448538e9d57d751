#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cqc/information.hpp"
#include "cqc/measurement.hpp"
#include "cqc/rng.hpp"
#include "cqc/states.hpp"
#include "test_helpers.hpp"

using namespace cqc;
using Catch::Approx;

TEST_CASE("computational and Fourier bases", "[measurement]") {
  const ProjectiveBasis comp = computational_basis(2);
  REQUIRE(max_abs(comp.columns() - identity(2)) == 0.0);

  // dim 2 Fourier = Hadamard = sigma_x eigenbasis
  const ProjectiveBasis f2 = fourier_basis(2);
  REQUIRE(max_abs(f2.columns() - pauli_basis(Pauli::X).columns()) <= 1e-15);

  REQUIRE(fourier_basis(1).columns()(0, 0) == Complex(1.0));

  REQUIRE(is_mutually_unbiased(computational_basis(5), fourier_basis(5)));
  REQUIRE_FALSE(is_mutually_unbiased(computational_basis(2),
                                     computational_basis(2)));
  REQUIRE_THROWS_AS(
      is_mutually_unbiased(computational_basis(2), computational_basis(3)),
      DimensionMismatch);
}

TEST_CASE("conjugate basis is always unbiased with its source",
          "[measurement]") {
  REQUIRE(max_abs(conjugate_basis(computational_basis(3)).columns() -
                  fourier_basis(3).columns()) == 0.0);
  REQUIRE(max_abs(conjugate_basis(pauli_basis(Pauli::Z)).columns() -
                  pauli_basis(Pauli::X).columns()) <= 1e-15);

  RandomStream rng(3);
  for (Index dim : {2, 3, 4}) {
    const ProjectiveBasis b(haar_unitary(dim, rng));
    REQUIRE(is_mutually_unbiased(b, conjugate_basis(b)));
    REQUIRE_NOTHROW(MubPair(b, conjugate_basis(b)));
  }
}

TEST_CASE("pauli eigenbases", "[measurement]") {
  REQUIRE(max_abs(pauli_basis(Pauli::Z).columns() - identity(2)) == 0.0);
  REQUIRE(is_mutually_unbiased(pauli_basis(Pauli::X), pauli_basis(Pauli::Y)));

  const double s = 1.0 / std::sqrt(2.0);
  const ComplexMatrix y = pauli_basis(Pauli::Y).columns();
  REQUIRE(std::abs(y(0, 0) - Complex(s)) <= 1e-15);
  REQUIRE(std::abs(y(1, 0) - Complex(0.0, s)) <= 1e-15);
  REQUIRE(std::abs(y(0, 1) - Complex(s)) <= 1e-15);
  REQUIRE(std::abs(y(1, 1) - Complex(0.0, -s)) <= 1e-15);
}

TEST_CASE("phase rotation preserves unbiasedness", "[measurement]") {
  const double theta = 0.7;
  ComplexMatrix rot = ComplexMatrix::Zero(2, 2);
  rot(0, 0) = std::exp(Complex(0.0, theta));
  rot(1, 1) = std::exp(Complex(0.0, -theta));  // exp(i theta sigma_z)
  const ProjectiveBasis rotated(rot * pauli_basis(Pauli::X).columns());
  REQUIRE(is_mutually_unbiased(pauli_basis(Pauli::Z), rotated));
}

TEST_CASE("projective basis validation", "[measurement]") {
  ComplexMatrix not_square(2, 3);
  not_square.setZero();
  REQUIRE_THROWS_AS(ProjectiveBasis(not_square), DimensionMismatch);

  ComplexMatrix shrunk = identity(2) * 0.9;
  REQUIRE_THROWS_AS(ProjectiveBasis(shrunk), NotUnitary);

  REQUIRE_THROWS_AS(MubPair(computational_basis(2), computational_basis(2)),
                    MubViolation);
}

TEST_CASE("joint distributions of named states", "[measurement]") {
  const ProjectiveBasis comp = computational_basis(2);

  const JointDistribution mcm =
      joint_distribution(mcm_state(2), comp, comp);
  REQUIRE(mcm.table()(0, 0) == Approx(0.5).margin(1e-12));
  REQUIRE(mcm.table()(1, 1) == Approx(0.5).margin(1e-12));
  REQUIRE(mcm.table()(0, 1) <= 1e-12);
  REQUIRE(mcm.table()(1, 0) <= 1e-12);

  // singlet in Z(x)Z is perfectly anticorrelated
  const DensityMatrix singlet = asymmetric_werner(WernerParams{1.0, 0.5});
  const JointDistribution anti = joint_distribution(singlet, comp, comp);
  REQUIRE(anti.table()(0, 1) == Approx(0.5).margin(1e-12));
  REQUIRE(anti.table()(1, 0) == Approx(0.5).margin(1e-12));
  REQUIRE(anti.table()(0, 0) <= 1e-12);
  REQUIRE(anti.table()(1, 1) <= 1e-12);

  // maximally mixed is uniform in any bases
  const JointDistribution flat = joint_distribution(
      maximally_mixed(2, 2), fourier_basis(2), pauli_basis(Pauli::Y));
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      REQUIRE(flat.table()(i, j) == Approx(0.25).margin(1e-12));
    }
  }

  // Werner at p = 3/4 in X(x)X: <xx> = -3/4
  const DensityMatrix werner = asymmetric_werner(WernerParams{0.75, 0.5});
  const JointDistribution xx = joint_distribution(
      werner, pauli_basis(Pauli::X), pauli_basis(Pauli::X));
  REQUIRE(xx.table()(0, 0) == Approx(1.0 / 16.0).margin(1e-9));
  REQUIRE(xx.table()(1, 1) == Approx(1.0 / 16.0).margin(1e-9));
  REQUIRE(xx.table()(0, 1) == Approx(7.0 / 16.0).margin(1e-9));
  REQUIRE(xx.table()(1, 0) == Approx(7.0 / 16.0).margin(1e-9));

  REQUIRE_THROWS_AS(
      joint_distribution(werner, computational_basis(3), comp),
      DimensionMismatch);
}

TEST_CASE("joint marginals match the reduced states", "[measurement]") {
  RandomStream rng(13);
  const DensityMatrix rho = random_density_matrix(2, 3, rng);
  const ProjectiveBasis ba(haar_unitary(2, rng));
  const ProjectiveBasis bb(haar_unitary(3, rng));
  const JointDistribution dist = joint_distribution(rho, ba, bb);

  const ProbabilityVector ma = dist.marginal_a();
  const ComplexMatrix reduced_a = rho.reduced(Side::A);
  for (Index i = 0; i < 2; ++i) {
    const Complex direct =
        (ba.vector(i).adjoint() * reduced_a * ba.vector(i))(0, 0);
    REQUIRE(ma(i) == Approx(direct.real()).margin(1e-9));
  }
  const ProbabilityVector mb = dist.marginal_b();
  const ComplexMatrix reduced_b = rho.reduced(Side::B);
  for (Index j = 0; j < 3; ++j) {
    const Complex direct =
        (bb.vector(j).adjoint() * reduced_b * bb.vector(j))(0, 0);
    REQUIRE(mb(j) == Approx(direct.real()).margin(1e-9));
  }
}

TEST_CASE("dephasing keeps exactly the classical correlations",
          "[measurement]") {
  RandomStream rng(19);
  const DensityMatrix rho = random_density_matrix(2, 3, rng);
  const JointDistribution dist =
      joint_distribution(rho, computational_basis(2), fourier_basis(3));

  ComplexMatrix diag = ComplexMatrix::Zero(6, 6);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 3; ++j) {
      diag(i * 3 + j, i * 3 + j) = dist.table()(i, j);
    }
  }
  const DensityMatrix dephased(diag, 2, 3);
  REQUIRE(quantum_mutual_information(dephased) ==
          Approx(classical_mutual_information(dist)).margin(1e-9));
}

TEST_CASE("joint distribution validation", "[measurement]") {
  REQUIRE_THROWS_AS(JointDistribution(Eigen::MatrixXd(0, 0)),
                    InvalidDistribution);

  Eigen::MatrixXd negative(2, 2);
  negative << 0.6, 0.5, -0.1, 0.0;
  REQUIRE_THROWS_AS(JointDistribution(negative), InvalidDistribution);

  Eigen::MatrixXd short_total(2, 2);
  short_total << 0.4, 0.3, 0.1, 0.1;
  REQUIRE_THROWS_AS(JointDistribution(short_total), InvalidDistribution);
}
