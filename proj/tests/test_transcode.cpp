#include <gtest/gtest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "qcrw/angle.hpp"
#include "qcrw/random.hpp"
#include "qcrw/semantics.hpp"
#include "qcrw/transcode.hpp"

using namespace qcrw;

namespace {

// |x,y,z> -> |x,z,y> on bit strings, qubit 0 most significant
Unitary block_swap_matrix(int k, int n, int l) {
  const int dim = 1 << (k + n + l);
  Unitary m = Unitary::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    int x = b >> (n + l), y = (b >> l) & ((1 << n) - 1), z = b & ((1 << l) - 1);
    m((x << (n + l)) | (z << n) | y, b) = 1.0;
  }
  return m;
}

Unitary hand_matrix(const Gate& g) {
  const double r = 1 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H: {
      Unitary m(2, 2);
      m << r, r, r, -r;
      return m;
    }
    case GateKind::P: {
      Unitary m = Unitary::Identity(2, 2);
      m(1, 1) = expi(g.angle);
      return m;
    }
    case GateKind::CNot: {
      Unitary m = Unitary::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
    case GateKind::Swap: {
      Unitary m = Unitary::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
      return m;
    }
    case GateKind::S: {
      Unitary m(1, 1);
      m(0, 0) = expi(g.angle);
      return m;
    }
    default: ADD_FAILURE() << "no hand matrix"; return {};
  }
}

Unitary framed(const Unitary& g, int k, int l) {
  Unitary a = Unitary::Identity(1 << k, 1 << k);
  Unitary b = Unitary::Identity(1 << l, 1 << l);
  Unitary ag = Eigen::kroneckerProduct(a, g).eval();
  return Eigen::kroneckerProduct(ag, b).eval();
}

// G ∘ U ∘ G^{-1}
Unitary gray_conj(const Unitary& u, int n) {
  Unitary g = gray_matrix(n);
  return g * u * g.adjoint();
}

bool only_swaps(const RawCircuit& c) {
  for (const auto& p : flatten(c))
    if (p.gate.kind != GateKind::Swap) return false;
  return true;
}

}  // namespace

TEST(Sigma, EmptyBlockIsIdentity) {
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l) {
      RawCircuit s = sigma(k, 0, l);
      EXPECT_EQ(s.wires(), 1 << (k + l));
      EXPECT_EQ(s.size(), 0u);
    }
}

TEST(Sigma, SingleQubitSwap) {
  Unitary m = gray_conj(lopp_sem(sigma(0, 1, 1)), 2);
  EXPECT_TRUE(unitary_equal(m, hand_matrix(Gate::swap()), 1e-12));
}

TEST(Sigma, MiddleBlocks) {
  Unitary m = gray_conj(lopp_sem(sigma(1, 1, 1)), 3);
  EXPECT_TRUE(unitary_equal(m, framed(hand_matrix(Gate::swap()), 1, 0), 1e-12));
}

TEST(Sigma, AllFramesMatchBitPermutation) {
  for (int k = 0; k <= 3; ++k)
    for (int n = 0; n <= 3; ++n)
      for (int l = 0; l <= 3 && k + n + l <= 6; ++l) {
        RawCircuit s = sigma(k, n, l);
        ASSERT_TRUE(only_swaps(s));
        EXPECT_EQ(s.wires(), 1 << (k + n + l));
        EXPECT_TRUE(unitary_equal(gray_conj(lopp_sem(s), k + n + l), block_swap_matrix(k, n, l), 1e-12))
            << k << "," << n << "," << l;
      }
}

TEST(Sigma, Cap) { EXPECT_THROW(sigma(3, 2, 2), DimensionCap); }

TEST(Encode, SingleHadamardBlock) {
  RawCircuit e = encode(RawCircuit::gate(Flavor::QC, Gate::h()));
  EXPECT_EQ(e.wires(), 2);
  auto gates = flatten(e);
  ASSERT_EQ(gates.size(), 3u);
  EXPECT_EQ(gates[0], (Placed{Gate::ps(-kPi / 2), 1}));
  EXPECT_EQ(gates[1], (Placed{Gate::bs(kPi / 4), 0}));
  EXPECT_EQ(gates[2], (Placed{Gate::ps(-kPi / 2), 1}));
  EXPECT_TRUE(unitary_equal(lopp_sem(e), hand_matrix(Gate::h()), 1e-12));
}

TEST(Encode, GeneratorsInEveryFrame) {
  const Gate gens[] = {Gate::h(), Gate::p(0.7), Gate::cnot(), Gate::swap(), Gate::s(-1.3)};
  for (const Gate& g : gens)
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= 3; ++l) {
        const int n = k + g.arity() + l;
        if (n > 5) continue;
        RawCircuit e = encode_gate(g, k, l);
        ASSERT_EQ(e.wires(), 1 << n);
        Unitary lhs = gray_matrix(n) * lopp_sem(e);
        Unitary rhs = framed(hand_matrix(g), k, l) * gray_matrix(n);
        EXPECT_TRUE(unitary_equal(lhs, rhs, 1e-10)) << gate_label(g) << " k=" << k << " l=" << l;
      }
}

TEST(Encode, PhaseOnMiddleQubitHitsModesTwoToFive) {
  RawCircuit e = encode_gate(Gate::p(0.4), 1, 1);
  Unitary u = lopp_sem(e);
  for (int p = 0; p < 8; ++p) {
    cplx expect = (p >= 2 && p <= 5) ? expi(0.4) : cplx(1.0);
    EXPECT_NEAR(std::abs(u(p, p) - expect), 0.0, 1e-12) << p;
  }
}

TEST(Encode, Intertwining) {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.index(4));
    RandomCircuitOptions opt;
    opt.gates = 1 + static_cast<int>(rng.index(10));
    opt.macros = rng.coin();
    LayeredCircuit c = random_qc(n, rng, opt);
    RawCircuit e = encode(c);
    ASSERT_EQ(e.wires(), 1 << n);
    Unitary lhs = gray_matrix(n) * lopp_sem(e);
    Unitary rhs = qc_sem(c) * gray_matrix(n);
    ASSERT_TRUE(unitary_equal(lhs, rhs, 1e-9)) << "trial " << t << " deviation " << max_deviation(lhs, rhs);
  }
}

TEST(Encode, HadamardLayerTouchesEveryMode) {
  for (int n = 1; n <= 4; ++n)
    for (int w = 0; w < n; ++w) {
      RawCircuit e = encode(embed(Flavor::QC, Gate::h(), w, n));
      std::vector<bool> hit(1 << n, false);
      for (const auto& p : flatten(e))
        if (p.gate.kind == GateKind::BS) hit[p.wire] = hit[p.wire + 1] = true;
      for (bool h : hit) EXPECT_TRUE(h);
    }
}

TEST(Encode, RejectsOpticalInputAndLargeCircuits) {
  EXPECT_THROW(encode(RawCircuit::gate(Flavor::LOPP, Gate::bs(0.1))), FlavorMismatch);
  EXPECT_THROW(encode(RawCircuit::identity(Flavor::QC, 7)), DimensionCap);
}

TEST(Encode, ExampleStructure) {
  RawCircuit c0 = compose_par(RawCircuit::gate(Flavor::QC, Gate::cnot()), RawCircuit::gate(Flavor::QC, Gate::h()));
  LayeredCircuit e = layer(encode(c0));
  LayeredCircuit parts = layer(then(encode_gate(Gate::cnot(), 0, 1), encode_gate(Gate::h(), 2, 0)));
  EXPECT_TRUE(same_layering(e, parts, 0.0));

  // σ_{2,1,0} and σ_{2,0,1} are trivial: the H part is two mirrored blocks
  auto h = flatten(encode_gate(Gate::h(), 2, 0));
  std::vector<Placed> expect = {{Gate::ps(-kPi / 2), 1}, {Gate::bs(kPi / 4), 0}, {Gate::ps(-kPi / 2), 1},
                                {Gate::ps(-kPi / 2), 2}, {Gate::bs(kPi / 4), 2}, {Gate::ps(-kPi / 2), 2},
                                {Gate::ps(-kPi / 2), 5}, {Gate::bs(kPi / 4), 4}, {Gate::ps(-kPi / 2), 5},
                                {Gate::ps(-kPi / 2), 6}, {Gate::bs(kPi / 4), 6}, {Gate::ps(-kPi / 2), 6}};
  EXPECT_EQ(h, expect);
  EXPECT_TRUE(only_swaps(encode_gate(Gate::cnot(), 0, 1)));
}

TEST(TargetIndex, Examples) {
  EXPECT_EQ(target_index(0, 2), (std::pair<std::string, std::string>{"0", ""}));
  EXPECT_EQ(target_index(1, 2), (std::pair<std::string, std::string>{"", "1"}));
  // G_3(3) = 010 = w a 1 0^q with w empty, a = 0, q = 1
  EXPECT_EQ(target_index(3, 3), (std::pair<std::string, std::string>{"", "10"}));
  EXPECT_EQ(target_index(5, 3), (std::pair<std::string, std::string>{"1", "1"}));
}

TEST(TargetIndex, NeighbouringModesDifferOnTarget) {
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k + 2 <= (1 << n); ++k) {
      auto [x, y] = target_index(k, n);
      ASSERT_EQ(x.size() + y.size(), static_cast<std::size_t>(n - 1));
      std::string a = gray(n, k), b = gray(n, k + 1);
      const std::size_t t = x.size();
      EXPECT_EQ(a.substr(0, t), x);
      EXPECT_EQ(b.substr(0, t), x);
      EXPECT_NE(a[t], b[t]);
      EXPECT_EQ(a.substr(t + 1), y);
      EXPECT_EQ(b.substr(t + 1), y);
      if (k % 2 == 1) {
        EXPECT_EQ(y.front(), '1');
        EXPECT_EQ(y.find('1', 1), std::string::npos);
      }
    }
}

TEST(TargetIndex, Range) {
  EXPECT_THROW(target_index(3, 2), RangeError);
  EXPECT_THROW(target_index(-1, 2), RangeError);
  EXPECT_THROW(target_index(0, 0), RangeError);
}

TEST(Decode, PhaseShifterAtOffsetThree) {
  RawCircuit c = embed(Flavor::LOPP, Gate::ps(0.9), 3, 16);
  auto ops = decode_ops(layer(c), 4);
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_EQ(ops[0].x, "0010");
  EXPECT_EQ(ops[0].base, BaseKind::S);
  EXPECT_DOUBLE_EQ(ops[0].angle, 0.9);
  Unitary u = qc_sem(decode(c, 4, false));
  for (int b = 0; b < 16; ++b) EXPECT_NEAR(std::abs(u(b, b) - (b == 2 ? expi(0.9) : cplx(1.0))), 0.0, 1e-12);
}

TEST(Decode, BeamSplitterAngle) {
  auto ops = decode_ops(layer(RawCircuit::gate(Flavor::LOPP, Gate::bs(0.3))), 1);
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_EQ(ops[0].base, BaseKind::RX);
  EXPECT_DOUBLE_EQ(ops[0].angle, -0.6);
}

TEST(Decode, Intertwining) {
  Rng rng(202);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.index(3));
    LayeredCircuit c = random_lopp(1 << n, rng, 1 + static_cast<int>(rng.index(12)));
    for (bool expand : {true, false}) {
      RawCircuit d = decode(c, n, expand);
      ASSERT_EQ(d.wires(), n);
      Unitary lhs = qc_sem(d) * gray_matrix(n);
      Unitary rhs = gray_matrix(n) * lopp_sem(c);
      ASSERT_TRUE(unitary_equal(lhs, rhs, 1e-9)) << "trial " << t << " expand " << expand;
    }
  }
}

TEST(Decode, ExpansionUsesGeneratorsOnly) {
  Rng rng(5);
  LayeredCircuit c = random_lopp(8, rng, 10);
  for (const auto& p : flatten(decode(c, 3))) EXPECT_FALSE(p.gate.is_macro()) << gate_label(p.gate);
}

TEST(Decode, ModeCount) {
  EXPECT_THROW(decode(RawCircuit::identity(Flavor::LOPP, 6)), NotPowerOfTwoModes);
  EXPECT_THROW(decode(RawCircuit::identity(Flavor::LOPP, 8), 2), NotPowerOfTwoModes);
  EXPECT_THROW(decode(RawCircuit::gate(Flavor::QC, Gate::h()), 1), FlavorMismatch);
  EXPECT_EQ(decode(RawCircuit::identity(Flavor::LOPP, 8)).wires(), 3);
}

TEST(RoundTrip, DecodeOfEncode) {
  Rng rng(303);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.index(3));
    RandomCircuitOptions opt;
    opt.gates = 1 + static_cast<int>(rng.index(8));
    opt.macros = rng.coin();
    LayeredCircuit c = random_qc(n, rng, opt);
    RawCircuit back = decode(encode(c), n);
    ASSERT_TRUE(unitary_equal(qc_sem(back), qc_sem(c), 1e-8)) << "trial " << t;
  }
}

TEST(RoundTrip, ExampleDecodesToQuarterTurns) {
  RawCircuit c0 = compose_par(RawCircuit::gate(Flavor::QC, Gate::cnot()), RawCircuit::gate(Flavor::QC, Gate::h()));
  auto full = flatten(encode(c0));
  auto simplified = simplify_swaps(full, 8);
  EXPECT_LT(simplified.size(), full.size());
  LayeredCircuit c1 = layer_gates(Flavor::LOPP, 8, simplified);
  EXPECT_TRUE(unitary_equal(lopp_sem(c1), lopp_sem(encode(c0)), 1e-12));

  int swaps = 0;
  for (const ControlSpec& op : decode_ops(c1, 3)) {
    if (op.base == BaseKind::X) {
      ++swaps;
      continue;
    }
    EXPECT_TRUE(op.base == BaseKind::S || op.base == BaseKind::RX);
    EXPECT_NEAR(op.angle, -kPi / 2, 1e-15);
  }
  EXPECT_GT(swaps, 0);
  EXPECT_TRUE(unitary_equal(qc_sem(decode(c1, 3)), qc_sem(c0), 1e-10));
}
