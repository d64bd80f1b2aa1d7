#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dissipchain/dynamics.hpp"
#include "dissipchain/errors.hpp"
#include "dissipchain/linalg.hpp"
#include "dissipchain/model.hpp"
#include "dissipchain/oracle.hpp"
#include "support/rk4.hpp"
#include "support/test_util.hpp"

using namespace dissipchain;
using model::Boundary;
using model::ChainSpec;
using testutil::max_abs_diff;

namespace {

model::Liouvillian open_gen(double gamma) {
  return model::liouvillian(ChainSpec(3, Boundary::Open, {gamma, 1.0 - gamma}));
}

}  // namespace

TEST_CASE("propagate keeps the initial state at t=0 and fixed points fixed") {
  const auto gen = open_gen(0.5);
  const ComplexMatrix excited = model::basis_state_density("eee");

  const auto single = dynamics::propagate(gen, excited, {0.0});
  REQUIRE(single.states.size() == 1);
  CHECK(max_abs_diff(model::devectorize(single.states[0]), excited) == 0.0);

  const ComplexMatrix ground = model::basis_state_density("ggg");
  const auto fixed = dynamics::propagate(gen, ground, {0.0, 0.5, 1.0, 2.0, 7.5});
  for (const auto& state : fixed.states) {
    CHECK(max_abs_diff(model::devectorize(state), ground) <= 1e-12);
  }
}

TEST_CASE("propagate agrees with the reference integrator") {
  const auto gen = open_gen(0.5);
  const ComplexMatrix rho0 = model::basis_state_density("eee");
  const auto traj = dynamics::propagate(gen, rho0, {0.0, 1.0});
  const auto reference =
      testutil::rk4_evolve(gen.matrix, model::vectorize(rho0), 1.0, 1e-3);
  CHECK(max_abs_diff(traj.states[1], reference) <= 1e-6);
}

TEST_CASE("propagate satisfies the semigroup property") {
  const auto gen = open_gen(0.3);
  std::mt19937 rng(61);
  const ComplexMatrix rho0 = testutil::random_product_density(3, rng);

  const auto direct = dynamics::propagate(gen, rho0, {0.0, 2.6});
  const auto first = dynamics::propagate(gen, rho0, {0.0, 1.1});
  const auto second = dynamics::propagate(
      gen, model::devectorize(first.states[1]).hermitian_part(), {0.0, 1.5});
  CHECK(max_abs_diff(direct.states[1], second.states[1]) <= 1e-9);
}

TEST_CASE("trajectories stay physical along a uniform grid") {
  const auto gen = open_gen(0.5);
  std::vector<double> times;
  for (int k = 0; k <= 200; ++k) times.push_back(k * 0.05);
  const auto traj =
      dynamics::propagate(gen, model::basis_state_density("eee"), times);

  double previous_excitation = 3.0 + 1e-9;
  for (const auto& state : traj.states) {
    const ComplexMatrix rho = model::devectorize(state);
    CHECK(std::abs(rho.trace() - Complex(1.0)) <= 1e-9);
    CHECK((rho - rho.adjoint()).frobenius_norm() <= 1e-9);
    CHECK(linalg::hermitian_eig(rho).eigenvalues.front() >= -1e-7);
    const double excitation = model::total_excitation(rho);
    CHECK(excitation <= previous_excitation + 1e-9);
    previous_excitation = excitation;
  }
}

TEST_CASE("propagate validates states and grids") {
  const auto gen = open_gen(0.5);
  ComplexMatrix not_a_state(8, 8);
  not_a_state(0, 0) = 2.0;
  CHECK_THROWS_AS(dynamics::propagate(gen, not_a_state, {0.0, 1.0}), InvalidState);
  CHECK_THROWS_AS(dynamics::propagate(gen, ComplexMatrix::identity(4), {0.0, 1.0}),
                  DimensionMismatch);
  const ComplexMatrix ground = model::basis_state_density("ggg");
  CHECK_THROWS_AS(dynamics::propagate(gen, ground, {}), std::invalid_argument);
  CHECK_THROWS_AS(dynamics::propagate(gen, ground, {0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(dynamics::propagate(gen, ground, {0.0, 1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("steady_state_from reaches the tabulated f values") {
  for (double gamma : {0.1, 0.5, 0.9}) {
    const auto report = dynamics::steady_state_from(
        open_gen(gamma), model::basis_state_density("egg"));
    REQUIRE(report.f_fit.has_value());
    CHECK(*report.f_fit == doctest::Approx(1.0 / 9.0).epsilon(1e-6));
    CHECK(report.residual <= 1e-10);
  }

  const auto excited = dynamics::steady_state_from(
      open_gen(0.5), model::basis_state_density("eee"));
  REQUIRE(excited.f_fit.has_value());
  CHECK(*excited.f_fit == doctest::Approx(11.0 / 135.0).epsilon(1e-6));
}

TEST_CASE("every basis start matches its closed form across the gamma grid") {
  const char* const labels[] = {"eee", "eeg", "ege", "egg",
                                "gee", "geg", "gge", "ggg"};
  for (int step = 1; step <= 9; ++step) {
    const double gamma = step * 0.1;
    const auto gen = open_gen(gamma);
    for (const char* label : labels) {
      const auto report =
          dynamics::steady_state_from(gen, model::basis_state_density(label));
      REQUIRE(report.f_fit.has_value());
      CHECK(std::abs(*report.f_fit - oracle::f_closed_form(label, gamma)) <= 1e-6);

      const auto& rho = report.steady_state;
      CHECK(std::abs(rho.trace() - Complex(1.0)) <= 1e-12);
      CHECK((rho - rho.adjoint()).frobenius_norm() <= 1e-12);
      CHECK(linalg::hermitian_eig(rho).eigenvalues.front() >= -1e-8);
    }
  }
}

TEST_CASE("closed chains relax to the ground state from anywhere") {
  const auto gen =
      model::liouvillian(ChainSpec(3, Boundary::Closed, {0.3, 0.5, 0.2}));
  for (const char* init : {"eee", "ege", "geg"}) {
    const auto report =
        dynamics::steady_state_from(gen, model::basis_state_density(init));
    CHECK_FALSE(report.f_fit.has_value());
    CHECK(max_abs_diff(report.steady_state, model::basis_state_density("ggg")) <=
          1e-8);
  }
}

TEST_CASE("members of the steady family are already steady") {
  const auto gen = open_gen(0.5);
  for (double f : {0.0, 0.15, 1.0 / 3.0}) {
    const auto report =
        dynamics::steady_state_from(gen, oracle::steady_state_matrix(f));
    CHECK(report.elapsed_T == 0.0);
    CHECK(report.residual <= 1e-10);
    CHECK(max_abs_diff(report.steady_state, oracle::steady_state_matrix(f)) <=
          1e-10);
    if (report.f_fit) CHECK(*report.f_fit == doctest::Approx(f).epsilon(1e-10));
  }
}

TEST_CASE("steady_state_from fails loudly on a near-degenerate spectrum") {
  const auto gen = model::liouvillian(ChainSpec(3, Boundary::Open, {1.0, 1e-9}));
  CHECK_THROWS_AS(
      dynamics::steady_state_from(gen, model::basis_state_density("eee")),
      NoConvergence);
}

TEST_CASE("kernel_report sees one steady state on closed chains") {
  const auto gen =
      model::liouvillian(ChainSpec(3, Boundary::Closed, {0.3, 0.5, 0.2}));
  const auto kernel = dynamics::kernel_report(gen);
  REQUIRE(kernel.dimension == 1);
  const auto ground = model::vectorize(model::basis_state_density("ggg"));
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    overlap += std::conj(kernel.basis[0][i]) * ground[i];
  }
  CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("the open-chain kernel is degenerate and holds the steady family") {
  const auto gen = open_gen(0.5);
  const auto kernel = dynamics::kernel_report(gen);
  CHECK(kernel.dimension >= 2);
  for (double f : {0.0, 1.0 / 9.0}) {
    const auto v = model::vectorize(oracle::steady_state_matrix(f));
    CHECK(inf_norm(gen.matrix * v) <= 1e-10);
  }
}

TEST_CASE("a two-site shared environment keeps its dark singlet") {
  const auto gen = model::liouvillian(ChainSpec(2, Boundary::Open, {1.0}));
  // singlet projector (|eg> - |ge>)(<eg| - <ge|)/2
  ComplexMatrix singlet(4, 4);
  singlet(1, 1) = singlet(2, 2) = 0.5;
  singlet(1, 2) = singlet(2, 1) = -0.5;
  CHECK(inf_norm(gen.matrix * model::vectorize(singlet)) <= 1e-12);

  // the kernel basis spans it: projecting onto the basis recovers the vector
  const auto kernel = dynamics::kernel_report(gen);
  const auto target = model::vectorize(singlet);
  ComplexVector projected(target.size(), Complex(0.0));
  for (const auto& direction : kernel.basis) {
    Complex coefficient = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
      coefficient += std::conj(direction[i]) * target[i];
    }
    for (std::size_t i = 0; i < target.size(); ++i) {
      projected[i] += coefficient * direction[i];
    }
  }
  CHECK(max_abs_diff(projected, target) <= 1e-8);
}

TEST_CASE("commutant_dimension counts commuting operators") {
  CHECK(dynamics::commutant_dimension({ComplexMatrix::identity(8)}) == 64);
  CHECK(dynamics::commutant_dimension({model::sigma_minus()}) == 2);

  const ChainSpec open3(3, Boundary::Open, {0.5, 0.5});
  const std::vector<ComplexMatrix> open_links = {model::link_operator(1, open3),
                                                 model::link_operator(2, open3)};
  CHECK(dynamics::commutant_dimension(open_links) >= 4);

  CHECK_THROWS_AS(dynamics::commutant_dimension(
                      {ComplexMatrix::identity(2), ComplexMatrix::identity(4)}),
                  DimensionMismatch);
}

TEST_CASE("a trivial commutant is sufficient but not necessary for uniqueness") {
  // closed chain: unique steady state although the commutant is nontrivial,
  // so only the forward implication may ever be asserted
  const ChainSpec closed3(3, Boundary::Closed, {0.3, 0.5, 0.2});
  std::vector<ComplexMatrix> links;
  for (int link = 1; link <= 3; ++link) {
    links.push_back(model::link_operator(link, closed3));
  }
  CHECK(dynamics::commutant_dimension(links) > 1);
  CHECK(dynamics::kernel_report(model::liouvillian(closed3)).dimension == 1);
}
