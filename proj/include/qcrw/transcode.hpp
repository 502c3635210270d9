#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcrw/circuit.hpp"
#include "qcrw/multicontrol.hpp"

namespace qcrw {

// k qubits above, l below, n for the argument: 2^{k+n+l} modes
struct EncodeFrame {
  int k = 0;
  int n = 0;
  int l = 0;
  int modes() const { return 1 << (k + n + l); }
};

// mode offset k inside a 2^n-mode circuit
struct DecodeFrame {
  int k = 0;
  int n = 0;
};

// mode permutation of σ_{k,n,l}: perm[m] is where mode m is sent, so that
// Gray codes x·y·z become x·z·y
std::vector<int> sigma_permutation(int k, int n, int l);

// swaps only, realizing sigma_permutation by adjacent transpositions
RawCircuit sigma(int k, int n, int l);

// E_{k,l}(g) for a generator g (H, P, CNot, s, swap, id) on 2^{k+arity+l} modes
RawCircuit encode_gate(const Gate& g, int k, int l);

// macros are expanded first; layers are encoded top gate first
RawCircuit encode(const RawCircuit& c);
RawCircuit encode(const LayeredCircuit& c);

// (x, y) of the Λ^x_y gate decoding a two-mode gate at modes k, k+1
std::pair<std::string, std::string> target_index(int k, int n);

// Λ gate of each optical gate, time order
std::vector<ControlSpec> decode_ops(const LayeredCircuit& c, int n);

// throws NotPowerOfTwoModes when c does not have 2^n modes
RawCircuit decode(const RawCircuit& c, int n, bool expand = true);
RawCircuit decode(const LayeredCircuit& c, int n, bool expand = true);
// n from the mode count
RawCircuit decode(const RawCircuit& c, bool expand = true);

// log2 of the mode count; throws NotPowerOfTwoModes
int qubits_for_modes(int modes);

// each maximal run of consecutive swaps (time order) replaced by the adjacent-swap
// network of its net permutation; other gates are kept in place
std::vector<Placed> simplify_swaps(const std::vector<Placed>& seq, int wires);

// time-ordered gates as a balanced raw circuit
RawCircuit raw_from_sequence(Flavor f, int wires, const std::vector<Placed>& seq);

}  // namespace qcrw
