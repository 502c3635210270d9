#pragma once

#include <array>

#include "qcrw/angle.hpp"
#include "qcrw/circuit.hpp"
#include "qcrw/semantics.hpp"

namespace qcrw {

// U = e^{iβ0} [[cos(β2/2), -i e^{iβ1} sin(β2/2)], [-i e^{iβ3} sin(β2/2), e^{i(β1+β3)} cos(β2/2)]]
// i.e. P(β1) then R_X(β2) then P(β3), times the scalar e^{iβ0}.
// β1 ∈ [0,π), β2 ∈ [0,2π), β3 ∈ [0,2π), β1 = 0 when β2 ∈ {0,π}.
struct Euler1Q {
  double b0 = 0, b1 = 0, b2 = 0, b3 = 0;
};

// δ1..δ9 stored at d[0]..d[8].
// U = D · R12(δ6) diag(1,e^{iδ5},1) · R01(δ4) · R12(δ3) diag(e^{iδ2}, e^{i(δ1+δ2)}, 1)
// with R_ab(θ) the R_X(θ) rotation on indices a,b and
// D = diag(e^{iδ9}, e^{i(δ7+δ8+δ9)}, e^{iδ8}).
struct Euler3x3 {
  std::array<double, 9> d{};
  double operator[](int j) const { return d[static_cast<std::size_t>(j - 1)]; }  // 1-based
};

// 2-mode optical Euler form: U = diag(e^{iβ3}, e^{iβ4}) · B(β2) · diag(e^{iβ1}, 1)
// with B(θ) = [[cos θ, i sin θ], [i sin θ, cos θ]].
// β1, β2 ∈ [0,π), β1 = 0 when β2 ∈ {0, π/2}.
struct EulerF {
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0;
};

// 3-mode optical form, δ1..δ9 at d[0]..d[8]:
// U = diag(e^{iδ7}, e^{iδ8}, e^{iδ9}) · B12(δ6) · diag(1, e^{iδ5}, 1) · B01(δ4) · B12(δ3) · diag(e^{iδ2}, e^{iδ1}, 1)
struct EulerG {
  std::array<double, 9> d{};
  double operator[](int j) const { return d[static_cast<std::size_t>(j - 1)]; }
};

Euler1Q euler_1q(const Unitary& u);
Unitary recompose(const Euler1Q& e);
Euler3x3 euler_3x3(const Unitary& u);
Unitary recompose(const Euler3x3& e);
EulerF euler_lopp2(const Unitary& u);
Unitary recompose(const EulerF& e);
EulerG euler_lopp3(const Unitary& u);
Unitary recompose(const EulerG& e);

// whether the angles respect the uniqueness constraints
bool in_range(const Euler1Q& e, double eps = kEpsAngle);
bool in_range(const Euler3x3& e, double eps = kEpsAngle);
bool in_range(const EulerF& e, double eps = kEpsAngle);
bool in_range(const EulerG& e, double eps = kEpsAngle);

// Euler rule on one qubit: s(α0); R_X(α1); P(α2); R_X(α3)  =  s(β0); P(β1); R_X(β2); P(β3)
std::vector<Placed> rule_q_lhs(double a1, double a2, double a3);
std::vector<Placed> rule_q_rhs(const Euler1Q& e);
Euler1Q solve_rule_q(double a0, double a1, double a2, double a3);

// Euler rule on n ≥ 2 qubits, every gate controlled by the first n-2 qubits.
// Left:  Λ^{x1}R_X(γ1); Λ^{x10}s(γ2); Λ^x_1 R_X(γ3); Λ^{x1}R_X(γ4)   (x = 1^{n-2})
// Right: Λ^x P(δ2); Λ^{x1}P(δ1); Λ^x_1 R_X(δ3); Λ^{x1}R_X(δ4); Λ^{x1}P(δ5);
//        Λ^x_1 R_X(δ6); Λ^{x1}P(δ7); Λ^{x0}P(δ8); Λ^{x1}P(δ8); Λ^x P(δ9)
std::vector<Placed> rule_r_lhs(int n, double g1, double g2, double g3, double g4);
std::vector<Placed> rule_r_rhs(int n, const Euler3x3& e);
// the 3×3 block of a controlled unitary on basis states |x10>, |x11>, |x01>
Unitary rule_r_block(const Unitary& full, int n);
Euler3x3 solve_rule_r(double g1, double g2, double g3, double g4, int n = 2);

// Optical Euler rules
// F: bs(α1); ps(α2) on the top mode; bs(α3)  =  ps(β1) top; bs(β2); ps(β3) top; ps(β4) bottom
std::vector<Placed> rule_f_lhs(double a1, double a2, double a3);
std::vector<Placed> rule_f_rhs(const EulerF& e);
EulerF solve_rule_F(double a1, double a2, double a3);
// G: bs(γ1) on modes 0,1; ps(γ2) mode 0; bs(γ3) modes 1,2; bs(γ4) modes 0,1  =
//    ps(δ1) m1; ps(δ2) m0; bs(δ3) m1,2; bs(δ4) m0,1; ps(δ5) m1; bs(δ6) m1,2; ps(δ7) m0; ps(δ8) m1; ps(δ9) m2
std::vector<Placed> rule_g_lhs(double g1, double g2, double g3, double g4);
std::vector<Placed> rule_g_rhs(const EulerG& e);
EulerG solve_rule_G(double g1, double g2, double g3, double g4);

}  // namespace qcrw
