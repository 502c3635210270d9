#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qcrw/circuit.hpp"

namespace qcrw {

using Unitary = Eigen::MatrixXcd;

struct Caps {
  int qubits = 10;
  int modes = 64;
};
// defaults, overridden by QCRW_CAP_QUBITS / QCRW_CAP_MODES
Caps caps();

// matrix of a single gate on its own wires (QC: 2^arity, LOPP: arity)
Unitary gate_matrix(const Gate& g, Flavor f);

Unitary qc_sem(const RawCircuit& c);
Unitary qc_sem(const LayeredCircuit& c);
Unitary lopp_sem(const RawCircuit& c);
Unitary lopp_sem(const LayeredCircuit& c);
// dispatches on flavor
Unitary semantics(const LayeredCircuit& c);

// U <- (I ⊗ G ⊗ I) U for a gate on qubit wires [wire, wire + k) of n
void apply_qubit_gate(Unitary& u, const Unitary& g, int wire, int n);
// U <- (I ⊕ G ⊕ I) U for a gate on modes [mode, mode + k)
void apply_mode_gate(Unitary& u, const Unitary& g, int mode);

// Gray code G_n(k) as an n-character string of '0'/'1', qubit 0 first
std::string gray(int n, std::uint64_t k);
// G_n(k) as a basis index (qubit 0 = most significant bit)
std::uint64_t gray_index(std::uint64_t k);
// inverse of gray_index
std::uint64_t gray_inverse(std::uint64_t g);
// table[k] = basis index of G_n(k)
std::vector<std::uint64_t> gray_map(int n);
// the permutation matrix |k> -> |G_n(k)>
Unitary gray_matrix(int n);

double max_deviation(const Unitary& u, const Unitary& v);
bool unitary_equal(const Unitary& u, const Unitary& v, double eps = 1e-9);
bool is_unitary(const Unitary& u, double tol = 1e-9);

}  // namespace qcrw
