#pragma once

#include <string>
#include <utility>

#include "dissipchain/complex_matrix.hpp"

namespace dissipchain::oracle {

// Closed-form reference values for the open three-site chain with link rates
// (gamma, 1-gamma). Everything here is analytic; nothing touches the
// numerical pipeline, so the two sides can be checked against each other.

struct OracleF {
  std::string state_label;  // computational label over {e,g}, three sites
  double gamma;             // in (0,1)
  double f;                 // steady-state parameter, always in [0, 1/3]
};

// Steady-state parameter f reached from a computational initial state.
// The single-excitation states egg, geg, gge give 1/9 for every gamma and
// ggg gives 0.
double f_closed_form(const std::string& state_label, double gamma);
OracleF oracle_f(const std::string& state_label, double gamma);

// The one-parameter steady-state family: a rank-one block of weight 3f on
// the single-excitation states plus weight 1-3f on the ground state.
ComplexMatrix steady_state_matrix(double f);

// Two-qubit reduction of the steady state for pair (1,2), (2,3) or (1,3).
// Adjacent pairs carry -f coherences, the distant pair +f.
ComplexMatrix reduced_pair_matrix(double f, std::pair<int, int> pair);

// Steady-state concurrence of every pair: 2f.
double steady_concurrence(double f);

}  // namespace dissipchain::oracle
