#pragma once
// the Weitzenböck identity for symmetric 2-tensors and its curvature terms
#include "rigiditykit/jet.hpp"

namespace rk {

// S viewed as a T*M-valued 1-form, (d∇ d∇* + d∇* d∇)S from first principles:
//   d∇*S(Z)       = -Σ ∇_i S(e_i, Z)
//   d∇ σ(X;Z)     = ∇_X σ(Z)
//   d∇ S(X,Y;Z)   = ∇_X S(Y,Z) - ∇_Y S(X,Z)
//   d∇* α(Y;Z)    = -Σ ∇_i α(e_i,Y;Z)
// returned as a plain n×n array since nothing forces symmetry a priori
RawTensor weitzenbock_lhs(const TensorJet& s);
// ∇*∇S - sign·(R°(S) - S∘Ric); sign = +1 is the stated identity
SymTensor weitzenbock_rhs(const TensorJet& s, int sign = 1);
// LHS - RHS, entrywise; Real/Complex/Quaternion only
RawTensor weitzenbock_residual(const TensorJet& s, int sign = 1);
bool is_zero(const RawTensor& t);

// -(n-1), -(n+2), -(n+8), -36
Scalar ricci_closed_form(Kind k, int n);
// S_0, S_0 - 3 S_0∘J, S_0 - 3 Σ S_0∘J_i for trace-free S_0; octonion throws
SymTensor r_circ_closed(const Geometry& g, const SymTensor& s0);
// -Σ_j λ_j² S_0(Y_j,Y_j) in the adapted frame at unit v
Scalar r_circ_frame(const Geometry& g, const SymTensor& s0, const Vec& v);
// -tr S_0 + S_0(v,v) - 3 Σ_{λ_j=2} S_0(Y_j,Y_j)
Scalar r_circ_frame_closed(const Geometry& g, const SymTensor& s0, const Vec& v);

struct CurvatureRow {
  Scalar ricci;            // Ric = ricci · g0
  Scalar ricci_closed;     // table value
  Scalar ricci_lambda;     // -Σ λ_j² from the adapted frame
  Scalar r_circ_g0;        // R°(g0) = r_circ_g0 · g0
  bool r_circ_tensor = false;  // R°S_0 equals the closed form (octonion: not applicable)
  bool r_circ_fiber = false;   // π_2^* R°S_0 pointwise against both frame displays
  bool s_ric = false;          // S_0∘Ric = ricci · S_0
  bool j_invariant = false;    // quaternion: Σ S_0∘J_i unchanged under a rotated J triple
  Scalar pairing;          // ⟨R°S_0 - S_0∘Ric, S_0⟩
  Scalar pairing_closed;   // n|S_0|², (n+3)|S_0|² - 3⟨S_0∘J,S_0⟩, (n+9)|S_0|² - 3Σ.., ⟨R°S_0,S_0⟩ + 36|S_0|²
  bool passed() const;
};
CurvatureRow curvature_term_row(const Geometry& g, Rng& rng);

}  // namespace rk
