#include "dissipchain/oracle.hpp"

#include <stdexcept>
#include <string>

#include "dissipchain/errors.hpp"

namespace dissipchain::oracle {

namespace {

constexpr double kFSlack = 1e-12;

void require_f(double f) {
  if (!(f >= -kFSlack && f <= 1.0 / 3.0 + kFSlack)) {
    throw FOutOfRange("f must lie in [0, 1/3], got " + std::to_string(f));
  }
}

}  // namespace

double f_closed_form(const std::string& state_label, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0,1)");
  }
  const double g = gamma;
  if (state_label == "eee") {
    return (24.0 - 19.0 * g + 19.0 * g * g) / (216.0 + 81.0 * g - 81.0 * g * g);
  }
  const double shared_denominator = 27.0 * (8.0 + 3.0 * g - 3.0 * g * g);
  if (state_label == "eeg") {
    return 4.0 * (4.0 - 5.0 * g + g * g) / shared_denominator;
  }
  if (state_label == "ege") {
    return 4.0 * (4.0 + 5.0 * g - 5.0 * g * g) / shared_denominator;
  }
  if (state_label == "gee") {
    return 4.0 * g * (3.0 + g) / shared_denominator;
  }
  if (state_label == "egg" || state_label == "geg" || state_label == "gge") {
    return 1.0 / 9.0;
  }
  if (state_label == "ggg") {
    return 0.0;
  }
  throw UnknownLabel("no steady-state formula for label '" + state_label + "'");
}

OracleF oracle_f(const std::string& state_label, double gamma) {
  const double f = f_closed_form(state_label, gamma);
  require_f(f);
  return {state_label, gamma, f};
}

ComplexMatrix steady_state_matrix(double f) {
  require_f(f);
  ComplexMatrix rho(8, 8);
  // the single-excitation block spans indices 3 (egg), 5 (geg), 6 (gge)
  const int block[3] = {3, 5, 6};
  const double sign[3] = {1.0, -1.0, 1.0};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) rho(block[a], block[b]) = f * sign[a] * sign[b];
  rho(7, 7) = 1.0 - 3.0 * f;
  return rho;
}

ComplexMatrix reduced_pair_matrix(double f, std::pair<int, int> pair) {
  require_f(f);
  double coherence;
  if (pair == std::pair<int, int>(1, 2) || pair == std::pair<int, int>(2, 3)) {
    coherence = -f;
  } else if (pair == std::pair<int, int>(1, 3)) {
    coherence = f;
  } else {
    throw UnknownPair("reduced steady state is defined for pairs (1,2), (2,3) and (1,3)");
  }
  ComplexMatrix rho(4, 4);
  rho(1, 1) = f;
  rho(2, 2) = f;
  rho(1, 2) = coherence;
  rho(2, 1) = coherence;
  rho(3, 3) = 1.0 - 2.0 * f;
  return rho;
}

double steady_concurrence(double f) {
  require_f(f);
  return 2.0 * f;
}

}  // namespace dissipchain::oracle
