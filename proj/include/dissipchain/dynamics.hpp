#pragma once

#include <optional>
#include <vector>

#include "dissipchain/complex_matrix.hpp"
#include "dissipchain/model.hpp"

namespace dissipchain::dynamics {

// Vectorized states of one evolution, one per grid time. times starts at 0
// and ascends strictly; states[k] is exp(M * times[k]) applied to the
// initial state.
struct Trajectory {
  std::vector<double> times;
  std::vector<model::StateVector> states;
  model::ChainSpec spec;
};

struct SteadyStateReport {
  int kernel_dimension;
  ComplexMatrix steady_state;
  double residual;   // ||M vec(rho_inf)||_inf, at most 1e-10 on success
  double elapsed_T;  // horizon actually evolved to
  std::optional<double> f_fit;  // open three-site chains only
};

struct KernelReport {
  int dimension;
  std::vector<model::StateVector> basis;  // orthonormal
};

// Evolves rho0 along the given grid via the matrix exponential. Uniform
// grids compute one step propagator and reuse it.
Trajectory propagate(const model::Liouvillian& gen, const ComplexMatrix& rho0,
                     const std::vector<double>& times);

// Relaxes rho0 with doubling horizons T = 1, 2, 4, ... until
// ||M v(T)||_inf <= 1e-10, throwing NoConvergence beyond T = 2^20. On open
// three-site chains the steady-state parameter f is read off the relaxed
// state after checking that all of its characteristic entries agree.
SteadyStateReport steady_state_from(const model::Liouvillian& gen,
                                    const ComplexMatrix& rho0);

// Orthonormal basis of the generator kernel (the steady-state span).
KernelReport kernel_report(const model::Liouvillian& gen);

// Dimension of {X : [X, L_k] = 0 for every k}, computed as the joint kernel
// of the stacked commutator superoperators I ⊗ L_kᵀ - L_k ⊗ I. A value of 1
// certifies a unique steady state; the converse does not hold.
int commutant_dimension(const std::vector<ComplexMatrix>& links);

}  // namespace dissipchain::dynamics
