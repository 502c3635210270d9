#pragma once

#include <cstdint>
#include <random>

#include "qcrw/circuit.hpp"
#include "qcrw/semantics.hpp"

namespace qcrw {

// Deterministic across platforms: only the raw mt19937_64 stream is used,
// distributions are computed here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t bits() { return g_(); }
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // uniform in [0, n)
  std::size_t index(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(g_() % n); }
  bool coin() { return (g_() >> 63) != 0; }
  double normal();

 private:
  std::mt19937_64 g_;
  bool has_spare_ = false;
  double spare_ = 0;
};

// Haar-distributed N×N unitary (QR of a complex Gaussian matrix)
Unitary haar_unitary(int n, Rng& rng);

struct RandomCircuitOptions {
  int gates = 12;
  bool macros = false;   // allow X, Z, R_X, NotC and small Λ gates
  bool scalars = true;   // QC only
};
LayeredCircuit random_qc(int qubits, Rng& rng, const RandomCircuitOptions& opt = {});
LayeredCircuit random_lopp(int modes, Rng& rng, int gates = 12, bool swaps = true);

}  // namespace qcrw
