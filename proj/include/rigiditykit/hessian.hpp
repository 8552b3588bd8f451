#pragma once
// the Hessian operator Q(S) for the four models, and the algebra behind it
#include "rigiditykit/jet.hpp"

namespace rk {

// D^J T = (D(T∘J))∘J on jets
TensorJet d_j(const TensorJet& t, int which = 0);
// Sym(∇²S) as a degree m+2 tensor (level 0 only)
SymTensor sym_hessian(const TensorJet& s);
// Sym(R°(∇²S)), derivative slots contracted against the curvature
SymTensor sym_r_circ_hessian(const TensorJet& s);

// Q(S) for the geometry of the jet; degree m(g0).
// Displayed: the closed formula as printed. FrameDerived: what the frame sum V(S)
// actually reduces to; differs only for the octonion model, where the -½π_2^*S term
// of V(S) turns the coefficient 1/6 of S inside L(...) into -1/3.
enum class QForm { Displayed, FrameDerived };
SymTensor q_apply(const TensorJet& s, QForm form = QForm::Displayed);

// same jet data over another model with the same curvature (e.g. a rotated J triple)
TensorJet rebind(const TensorJet& t, const Geometry& g);

// Ricci rearrangement in the adapted frame at v, frame index j:
// ∇²_{Yj,v}S(v,Yj) - ∇²_{v,Yj}S(v,Yj) - λ²S(Yj,Yj) + λ²S(v,v)
Scalar ricci_rearrange_residual(const TensorJet& s, const AdaptedFrame& fr, int j);
// zeroth order: S(R(Yj,v)v,Yj) + S(R(Yj,v)Yj,v) - λ²(S(Yj,Yj) - S(v,v))
Scalar ricci_rearrange_zeroth(const Geometry& g, const SymTensor& s, const AdaptedFrame& fr, int j);

Scalar mu_weight_inv(int lambda);  // μ_j^{-1}: 1 for λ ∈ {0,1}, 2 for λ = 2

struct VofS {
  Scalar value;        // the frame sum
  Scalar q_value;      // π^*Q(S) at v, displayed formula
  Scalar q_derived_value;
  Scalar dropped;      // sum of the X-derivative terms evaluated separately
  Scalar s_term;       // ½ Σ μ_j^{-1} S(Yj,Yj)
  Scalar s_term_closed;  // closed form of s_term for the kind
};
VofS v_of_s(const TensorJet& s, const Vec& v);

struct AveragePairing {
  Scalar direct;      // ⟨Q(S), L(g0)⟩ (real: ⟨Q(S), g0⟩)
  Scalar volume;      // coefficient times ⟨S, g0⟩
  Scalar divergence;  // the remaining divergence terms
  Scalar volume_coeff;
  Scalar residual() const { return direct - volume - divergence; }
};
AveragePairing average_pairing(const TensorJet& s);

// D*L(h) - (p/(p+2)) L(D*h) + (2/(p+2)) Dh, value level
SymTensor dstar_l_residual(const TensorJet& h);
// coefficients of D*L(h) = a L(D*h) + b Dh for deg h = p
std::pair<Scalar, Scalar> dstar_l_coeffs(int p);

// complex model: the 3-tensor p and W(S)
struct WResult {
  JetFunction f, h;  // Ω2 and Ω0 parts of π_2^*S
  TensorJet p;       // trace-free 3-tensor jet, order(S) - 1
  SymTensor q0;
  SymTensor w;
  bool v_omega4_zero = false;  // V(f,h) has no Ω4 part
  SymTensor residual;          // L(W) + Dp - Q
  // the E_4^0 equation is not used to solve for p; its defect
  // ½(η_+^-η_+^- f_2 + η_+^+η_+^+ f_-2) - ¼(η_+^+η_+^- + η_+^-η_+^+) f_0
  // is what L(W) + Dp - Q pulls back to
  JetFunction obstruction;
  bool residual_is_obstruction = false;
};
WResult w_of_s(const TensorJet& s);

// random jet with D*S = 0 through order-1, by exact elimination over the jet entries
TensorJet solenoidal_jet(const Geometry& g, int order, Rng& rng);

}  // namespace rk
