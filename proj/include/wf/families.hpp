#pragma once

#include <string>
#include <vector>

#include "wf/hermitian.hpp"

namespace wf {

/// (|00> + |11>)/sqrt(2) on C^2 (x) C^2.
CVector bell_vector();
HermitianOperator bell_projector();

/// p |psi><psi| + (1 - p) I/4, 0 <= p <= 1.
HermitianOperator werner_state(double p);

/// sigma_q = q |psi><psi| + (1 - q) I/4. The primed variant adds -q/2 at
/// (0,2), (2,0), (1,3) and (3,1): the Hermitian completion that keeps every
/// nonzero entry of the one-sided pattern (0,2), (3,1).
HermitianOperator isotropic_sigma(double q, bool primed);

/// sigma_q - (1 + q)/4 I for -1/3 < q < 0.
HermitianOperator isotropic_witness(double q, bool primed);

struct WxyzResult {
  HermitianOperator op;
  bool condition_met;
};

/// Necessary and sufficient witness conditions on (x, y, z).
bool wxyz_condition(double x, double y, double z);

/// 9x9 Choi-type pattern, x/y/z cycling along the diagonal, -1 couplings
/// among |00>, |11>, |22>.
WxyzResult w_xyz(double x, double y, double z);

HermitianOperator choi_sigma();

/// Eigenvectors of W[1,1,0] as listed, |v_k> for k = 0..8.
CVector choi_eigenvector(int k);
/// Q0 = 1/2 |v0><v0| + |v1><v1| and Q1 = |v2><v2| + |v7><v7|.
HermitianOperator choi_q0();
HermitianOperator choi_q1();

HermitianOperator sigma1();
HermitianOperator sigma2();

struct WqExample {
  HermitianOperator q1;
  HermitianOperator q2;
  HermitianOperator w;      // Q1 + Q2^T_B
  HermitianOperator w_opt;  // Q2^T_B
  ProductVector zero;       // u = (|0> - |1>)/sqrt2, v = (|0> + |1>)/sqrt2
};

WqExample wq_parts(double a, double b);
HermitianOperator wq_example(double a, double b);

struct C3Example {
  HermitianOperator r1, r2, p, q;
  HermitianOperator w;   // R1 + R2^T_B + Q
  HermitianOperator w1;  // W + P
  HermitianOperator w2;  // W - Q
};

C3Example c3_example();

/// Two-qubit witness with entries 1/8, 3/8, -1/4 used for the four-copy lift.
HermitianOperator lift_example_witness();

/// |psi+><psi+|^{T_A} + Q on C^2 (x) C^3, with |psi+> = (|00> + |11>)/sqrt2 and
/// Q PSD supported on span{|00>, |01>, |10>, |11>}.
HermitianOperator bell_pt_plus_q(const HermitianOperator& q);
/// Default Q = 1/4 |psi+><psi+| embedded in C^2 (x) C^3.
HermitianOperator bell_pt_default_q();
/// Projector onto the negative eigenvector (|01> - |10>)/sqrt2 of |psi+><psi+|^{T_A}, on C^2 (x) C^3.
HermitianOperator bell_pt_negative_projector();

/// Names accepted by named_family.
std::vector<std::string> family_names();
/// Builds a parameterised family by name; params are read in order with
/// defaults when missing.
HermitianOperator named_family(const std::string& name, const std::vector<double>& params = {});

}  // namespace wf
