#include "qcrw/random.hpp"

#include <cmath>

#include "qcrw/angle.hpp"

namespace qcrw {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Unitary haar_unitary(int n, Rng& rng) {
  Unitary z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Unitary> qr(z);
  Unitary q = qr.householderQ();
  Unitary r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

LayeredCircuit random_qc(int qubits, Rng& rng, const RandomCircuitOptions& opt) {
  std::vector<Placed> seq;
  std::vector<double> scalars;
  for (int i = 0; i < opt.gates; ++i) {
    double a = rng.uniform(0, kTwoPi);
    int pick = static_cast<int>(rng.index(opt.macros ? 9 : 5));
    if (qubits < 2 && (pick == 2 || pick == 3 || pick == 7 || pick == 8)) pick = 0;
    switch (pick) {
      case 0: seq.push_back({Gate::h(), static_cast<int>(rng.index(qubits))}); break;
      case 1: seq.push_back({Gate::p(a), static_cast<int>(rng.index(qubits))}); break;
      case 2: seq.push_back({Gate::cnot(), static_cast<int>(rng.index(qubits - 1))}); break;
      case 3: seq.push_back({Gate::swap(), static_cast<int>(rng.index(qubits - 1))}); break;
      case 4:
        if (opt.scalars)
          scalars.push_back(a);
        else
          seq.push_back({Gate::h(), static_cast<int>(rng.index(qubits))});
        break;
      case 5: seq.push_back({Gate::x(), static_cast<int>(rng.index(qubits))}); break;
      case 6: seq.push_back({Gate::rx(a), static_cast<int>(rng.index(qubits))}); break;
      case 7: seq.push_back({Gate::notc(), static_cast<int>(rng.index(qubits - 1))}); break;
      case 8: {
        int w = static_cast<int>(rng.index(qubits - 1));
        seq.push_back({Gate::lambda(rng.coin() ? "1" : "0", "", rng.coin() ? BaseKind::RX : BaseKind::P, a), w});
        break;
      }
    }
  }
  return layer_gates(Flavor::QC, qubits, seq, scalars);
}

LayeredCircuit random_lopp(int modes, Rng& rng, int gates, bool swaps) {
  std::vector<Placed> seq;
  for (int i = 0; i < gates; ++i) {
    double a = rng.uniform(0, kTwoPi);
    int pick = static_cast<int>(rng.index(swaps ? 3 : 2));
    if (modes < 2) pick = 0;
    switch (pick) {
      case 0: seq.push_back({Gate::ps(a), static_cast<int>(rng.index(modes))}); break;
      case 1: seq.push_back({Gate::bs(a), static_cast<int>(rng.index(modes - 1))}); break;
      case 2: seq.push_back({Gate::swap(), static_cast<int>(rng.index(modes - 1))}); break;
    }
  }
  return layer_gates(Flavor::LOPP, modes, seq);
}

}  // namespace qcrw
