#pragma once

#include <string>
#include <vector>

#include "dissipchain/complex_matrix.hpp"

namespace dissipchain::model {

// Single-qubit operators in the {|e>, |g>} basis (excited state first), so
// sigma_minus |e> = |g>. All constants are exact.
const ComplexMatrix& sigma_minus();
const ComplexMatrix& sigma_plus();
const ComplexMatrix& sigma_y();  // i(sigma_minus - sigma_plus)
const ComplexMatrix& sigma_z();
const ComplexMatrix& identity2();

enum class Boundary { Open, Closed };

// A chain of n qubits where each link couples two contiguous sites to a
// shared decay channel. Open chains have n-1 links; closed chains add the
// wrap-around link from site n back to site 1. Sites and links are 1-based.
struct ChainSpec {
  int n_sites;
  Boundary boundary;
  std::vector<double> link_rates;  // nonnegative, at least one positive

  ChainSpec(int n, Boundary b, std::vector<double> rates);

  int link_count() const { return static_cast<int>(link_rates.size()); }
  int dimension() const { return 1 << n_sites; }  // Hilbert space dimension D
};

// Generator of the dissipative dynamics as a D^2 x D^2 matrix acting on
// row-stacked density matrices: d/dt vec(rho) = matrix * vec(rho).
struct Liouvillian {
  ComplexMatrix matrix;
  ChainSpec spec;
};

// Row-stacked density matrix: rho(i,j) lives at v[D*i + j] (0-based), which
// is the 1-based rule v_{D(i-1)+j}.
using StateVector = ComplexVector;

// sigma_minus acting on one site of an n-qubit register:
// I ⊗ ... ⊗ sigma_minus ⊗ ... ⊗ I with the flip at `site`.
ComplexMatrix lowering_operator(int site, int n);

// Collective jump operator of one link: sigma_minus(site) +
// sigma_minus(site+1), wrapping site n+1 to 1 only on closed chains.
ComplexMatrix link_operator(int link, const ChainSpec& spec);

// Assembles sum_k r_k (2 L_k ⊗ conj(L_k) - L_k†L_k ⊗ I - I ⊗ (L_k†L_k)ᵀ)
// over all links. With the real-valued collective lowering operators used
// here the conjugations are no-ops, but the general form keeps the builder
// correct for any jump operator.
Liouvillian liouvillian(const ChainSpec& spec);

StateVector vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const StateVector& v);

// Re tr(rho * sum_i sigma_plus_i sigma_minus_i): the mean number of excited
// qubits. Non-increasing under the pure-decay dynamics.
double total_excitation(const ComplexMatrix& rho);

// Computational product states from labels over {e,g}, e.g. "egg".
int basis_index(const std::string& label);
ComplexMatrix basis_state_density(const std::string& label);

}  // namespace dissipchain::model
