#pragma once
// operator identities on the unit tangent bundle of the complex model, and the
// fibrewise identities for V, checked on jets and on single tensors
#include "rigiditykit/jet.hpp"

namespace rk {

// residual of each identity applied to u; every one should be the zero function
struct CommutatorResiduals {
  JetFunction xv, vh, hx;  // [X,V] - H, [V,H] - X, [H,X] + 4V
  JetFunction comm2;       // H_+X_- + H_-X_+ - X_+H_- - X_-H_+ + 4V
  JetFunction comm3;       // [η_+^+, η_+^-]
  JetFunction pestov;      // 4(-η_-^-η_+^+ + η_+^+η_-^-) - (-X_-X_+ + X_+X_- - H_-H_+ + H_+H_- - 4iV)
  JetFunction h_conj;      // J^{-1}XJ - H
};
// u needs order >= 2, complex model
CommutatorResiduals commutator_residuals(const JetFunction& u);

// (Xπ^*T)(v) computed from the level-1 entries directly, minus π^*(DT)(v)
Scalar x_and_d_residual(const TensorJet& t, const Vec& v);

// η_ε^δ maps E^λ_m into E^{λ+δ}_{m+ε}: the norm-free test is that every other
// eigencomponent of the image vanishes. u must lie in a single E^{i(m-2k)}_m, m+1 <= 3
bool eta_mapping_ok(const JetFunction& u, int m, int k, int eps, int delta);

// Δ_H^tot π_2^*S - π_2^*(∇*∇S), as a function
JetFunction delta_h_residual(const TensorJet& s);

// fibrewise, trace-free T
SymTensor jandv_residual(const SymTensor& t, const SparseCols& j);    // Ω2: T∘J - T - ½V²T
SymTensor eqtriple_residual(const SymTensor& t, const SparseCols& j);  // Ω3: V³T + 7VT - 6T∘J
SymTensor j_inverse_residual(const SymTensor& t, const Mat& j);          // T∘J^{-1} - (-1)^m T∘J
// E(Vp·q) + E(p·Vq) for trace-free p, q of equal degree
Scalar v_antisymmetry_defect(const SymTensor& p, const SymTensor& q, const SparseCols& j);
// tr(VT) - V tr(T)
SymTensor trace_v_residual(const SymTensor& t, const SparseCols& j);

}  // namespace rk
