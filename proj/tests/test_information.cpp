#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cqc/information.hpp"
#include "cqc/measurement.hpp"
#include "cqc/rng.hpp"
#include "cqc/states.hpp"
#include "test_helpers.hpp"

using namespace cqc;
using Catch::Approx;
using testutil::h2;

namespace {

ProbabilityVector vec(std::initializer_list<double> xs) {
  ProbabilityVector p(Index(xs.size()));
  Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

JointDistribution correlated_half() {
  Eigen::MatrixXd t(2, 2);
  t << 0.5, 0.0, 0.0, 0.5;
  return JointDistribution(t);
}

JointDistribution independent_uniform() {
  Eigen::MatrixXd t(2, 2);
  t.setConstant(0.25);
  return JointDistribution(t);
}

JointDistribution werner_xx() {
  return joint_distribution(asymmetric_werner(WernerParams{0.75, 0.5}),
                            pauli_basis(Pauli::X), pauli_basis(Pauli::X));
}

}  // namespace

TEST_CASE("shannon entropy", "[information]") {
  REQUIRE(shannon_entropy(vec({0.25, 0.25, 0.25, 0.25})) ==
          Approx(2.0).margin(1e-12));
  REQUIRE(shannon_entropy(vec({0.0, 1.0, 0.0})) == 0.0);
  REQUIRE(shannon_entropy(vec({0.125, 0.875})) ==
          Approx(h2(0.125)).margin(1e-12));
  REQUIRE(shannon_entropy(vec({0.125, 0.875})) ==
          Approx(0.543564).margin(1e-6));

  for (Index n : {3, 5, 7}) {
    ProbabilityVector p(n);
    p.setConstant(1.0 / double(n));
    REQUIRE(std::abs(shannon_entropy(p) - std::log2(double(n))) <= 1e-12);
  }

  REQUIRE_THROWS_AS(shannon_entropy(vec({0.7, -0.3, 0.6})),
                    InvalidDistribution);
  REQUIRE_THROWS_AS(shannon_entropy(vec({0.4, 0.4})), InvalidDistribution);
}

TEST_CASE("classical mutual information", "[information]") {
  REQUIRE(classical_mutual_information(correlated_half()) ==
          Approx(1.0).margin(1e-12));
  REQUIRE(classical_mutual_information(independent_uniform()) ==
          Approx(0.0).margin(1e-12));
  REQUIRE(classical_mutual_information(werner_xx()) ==
          Approx(1.0 - h2(0.125)).margin(1e-9));
  REQUIRE(classical_mutual_information(werner_xx()) ==
          Approx(0.456436).margin(1e-6));
}

TEST_CASE("classical conditional entropy", "[information]") {
  REQUIRE(classical_conditional_entropy(correlated_half(), Side::B) ==
          Approx(0.0).margin(1e-12));
  REQUIRE(classical_conditional_entropy(independent_uniform(), Side::B) ==
          Approx(1.0).margin(1e-12));
  // symmetric table: H(A|B) = H(B|A) = H2(1/8)
  REQUIRE(classical_conditional_entropy(werner_xx(), Side::B) ==
          Approx(h2(0.125)).margin(1e-9));
  REQUIRE(classical_conditional_entropy(werner_xx(), Side::A) ==
          Approx(h2(0.125)).margin(1e-9));
}

TEST_CASE("von Neumann entropy", "[information]") {
  RandomStream rng(7);
  REQUIRE(von_neumann_entropy(random_pure_state(2, 3, rng)) <= 1e-8);
  REQUIRE(von_neumann_entropy(ComplexMatrix(identity(2) / 2.0)) ==
          Approx(1.0).margin(1e-12));

  const DensityMatrix werner = asymmetric_werner(WernerParams{0.75, 0.5});
  REQUIRE(von_neumann_entropy(werner) ==
          Approx(testutil::werner_s_ab()).margin(1e-9));
  REQUIRE(von_neumann_entropy(werner) == Approx(0.993393).margin(1e-6));

  REQUIRE_THROWS_AS(von_neumann_entropy(ComplexMatrix(identity(2))),
                    NotAState);  // trace 2
  ComplexMatrix indefinite = ComplexMatrix::Zero(2, 2);
  indefinite(0, 0) = 1.1;
  indefinite(1, 1) = -0.1;
  REQUIRE_THROWS_AS(von_neumann_entropy(indefinite), NotAState);
}

TEST_CASE("quantum mutual information", "[information]") {
  REQUIRE(quantum_mutual_information(bell_phi_plus(2)) ==
          Approx(2.0).margin(1e-9));
  REQUIRE(quantum_mutual_information(maximally_mixed(2, 3)) ==
          Approx(0.0).margin(1e-9));
  REQUIRE(quantum_mutual_information(
              asymmetric_werner(WernerParams{0.75, 0.5})) ==
          Approx(testutil::werner_qmi()).margin(1e-9));
  REQUIRE(quantum_mutual_information(
              asymmetric_werner(WernerParams{0.75, 0.5})) ==
          Approx(1.006607).margin(1e-6));
}

TEST_CASE("conditional quantum entropy", "[information]") {
  REQUIRE(conditional_quantum_entropy(bell_phi_plus(2), Side::A) ==
          Approx(-1.0).margin(1e-9));
  REQUIRE(conditional_quantum_entropy(maximally_mixed(2, 2), Side::A) ==
          Approx(1.0).margin(1e-9));
  REQUIRE(conditional_quantum_entropy(mcm_state(2), Side::A) ==
          Approx(0.0).margin(1e-9));
}

TEST_CASE("information inequalities on sampled states", "[information]") {
  RandomStream rng(43);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_density_matrix(2, 3, rng);
    const ProjectiveBasis ba(haar_unitary(2, rng));
    const ProjectiveBasis bb(haar_unitary(3, rng));
    const JointDistribution dist = joint_distribution(rho, ba, bb);

    const double cmi = classical_mutual_information(dist);
    REQUIRE(cmi >= 0.0);
    REQUIRE(cmi <= std::min(shannon_entropy(dist.marginal_a()),
                            shannon_entropy(dist.marginal_b())) +
                       1e-9);
    REQUIRE(quantum_mutual_information(rho) >= cmi - 1e-9);
    REQUIRE(quantum_mutual_information(rho) <=
            2.0 * std::min(std::log2(2.0), std::log2(3.0)) + 1e-9);
  }

  // Schmidt symmetry of pure-state marginals
  for (int i = 0; i < 20; ++i) {
    const DensityMatrix psi = random_pure_state(3, 4, rng);
    REQUIRE(von_neumann_entropy(psi.reduced(Side::A)) ==
            Approx(von_neumann_entropy(psi.reduced(Side::B))).margin(1e-8));
  }
}
