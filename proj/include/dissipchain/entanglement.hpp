#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "dissipchain/complex_matrix.hpp"
#include "dissipchain/dynamics.hpp"

namespace dissipchain::entanglement {

using SitePair = std::pair<int, int>;  // 1-based sites

// Square roots of the spin-flip spectrum, sorted descending. All entries are
// nonnegative; the concurrence is max{0, l1 - l2 - l3 - l4}.
struct WoottersSpectrum {
  std::array<double, 4> lambdas;
};

struct ConcurrenceSeries {
  std::vector<double> times;
  std::vector<SitePair> pairs;               // normalized to first < second
  std::vector<std::vector<double>> values;   // [time][pair], each in [0,1]
};

enum class BirthKind { Immediate, Sudden, Never };

struct BirthClassification {
  BirthKind kind;
  std::optional<double> t_star;  // first grid time above threshold, Sudden only
};

// Reduces an n-qubit state to the two kept sites; the keep order fixes the
// tensor-factor order of the 4x4 result.
ComplexMatrix partial_trace(const ComplexMatrix& rho, SitePair keep, int n);

// Spin-flip spectrum of a two-qubit state. The eigenvalues of rho*rho_tilde
// are obtained through the Hermitian similarity sqrt(rho) rho_tilde
// sqrt(rho); spectral leakage down to -1e-10 is clamped to zero and anything
// more negative throws NotPSD.
WoottersSpectrum wootters_spectrum(const ComplexMatrix& rho4);

double concurrence(const ComplexMatrix& rho4);

ConcurrenceSeries concurrence_series(const dynamics::Trajectory& traj,
                                     std::vector<SitePair> pairs);

// Classifies one pair's concurrence curve on a uniform grid: Never when it
// stays at or below tol everywhere, Immediate when it exceeds tol within the
// first `window` points after t = 0, otherwise Sudden with the first grid
// time above tol.
BirthClassification sudden_birth(const ConcurrenceSeries& series, SitePair pair,
                                 double tol, int window);

}  // namespace dissipchain::entanglement
