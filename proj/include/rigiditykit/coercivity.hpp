#pragma once
// fibrewise algebra and the constant ledger of the real and complex injectivity arguments
#include <string>

#include "rigiditykit/hessian.hpp"

namespace rk {

struct LedgerEntry {
  std::string name;
  std::string inputs;    // how the value was recomputed
  Scalar value;
  Scalar claimed;
  std::string relation;  // value <relation> claimed: "==", "<=", ">"
  bool verdict = false;
  bool tight = false;    // inequality attained with equality
};

struct ConstantLedger {
  Kind kind = Kind::Real;
  int n = 0;
  std::vector<LedgerEntry> entries;
  bool all_pass() const;
  int tight_count() const;
};

// coefficients of Q(S) = a_s S + a_lap ∇*∇S + a_tr (tr S) g0, probed from q_apply
struct RealQCoefficients {
  Scalar a_s, a_lap, a_tr;
  bool consistent = false;  // the three-term form reproduces q_apply on a random jet
};
RealQCoefficients real_q_coefficients(int n, Rng& rng);

ConstantLedger real_case_constants(int n);
ConstantLedger real_case_constants(int n, const RealQCoefficients& q);
ConstantLedger complex_case_constants(int n);  // n >= 4

// Q_1(S) = ¼∇*∇S + ½(-S + (tr S)g0 + S∘J), value level
SymTensor q1_apply(const TensorJet& s);

struct ComplexIdentities {
  bool x_plus_f = false;    // eigen-grouping of X_+f
  bool x_plus_jf = false;   // eigen-grouping of X_+Jf
  bool h_plus_vf = false;   // eigen-grouping of H_+Vf as displayed
  bool h_plus_vf_flipped = false;  // the same with the overall sign reversed
  bool jf_is_one_plus_half_v2 = false;
  bool sum_components = false;  // X_+Jf + H_+Vf = a + (b-3c) + (d-3e) + g, the 8p expansion
  bool q1_pairing = false;      // ⟨Q_1 S,S⟩ pointwise split into S_0 and h parts
  bool x_minus_difference = false;  // X_-f - X_-Jf = 2(η_-^- f_2 + η_-^+ f_-2)
  bool zero = false;            // η_-^+ f_2 = η_-^- f_-2 = 0
};
ComplexIdentities complex_case_identities(const TensorJet& s);

// the component-norm identity for ⟨X_+Jf + H_+Vf, X_+f⟩, in a formal algebra where the
// six components a..g sit in orthogonal V-eigenspaces with arbitrary Gram data inside each.
// The displayed H_+Vf = -2a + 2c + 2e - 2g uses H_+ = i(η^+ - η^-); the η definition gives
// H_+ = -i(η^+ - η^-), which flips it, and then the pairing is
// |a|² + ⟨b-3c,b+c⟩ + ⟨d-3e,d+e⟩ + |g|² instead
struct CelleCheck {
  bool displayed = false;        // identity with the displayed expansions
  bool eta_sign = false;         // the same right side with the η-consistent sign
  bool eta_sign_closed = false;  // the η-consistent pairing equals the closed form above
};
CelleCheck celle_formal_check();

}  // namespace rk
