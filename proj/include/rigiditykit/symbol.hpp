#pragma once
// principal symbols of Q and of its solenoidal projection
#include "rigiditykit/hessian.hpp"

namespace rk {

// After the solenoidal projection every model has σ_Q(ξ)S = Sym(A_ξ ⊗ S) with
//   real:      A = ¼|ξ|²                 (degree 0)
//   complex/H: A = ¼|ξ|² g0 - ⅛ Σ_i (J_iξ)⊗(J_iξ)
//   octonion:  A = (7|ξ|² g0 - ρ_ξ)/24, ρ_ξ(X,Y) = <R(ξ,X)Y, ξ>
SymTensor symbol_form(const Geometry& g, const Vec& xi);

struct SymbolMap {
  int n = 0;
  int out_degree = 0;
  Vec xi;
  Mat matrix;  // columns: canonical basis of S^2, rows: canonical basis of S^m
  SymTensor apply(const SymTensor& s) const;
};
SymbolMap assemble_symbol(const Geometry& g, const Vec& xi);

// the operator formulas read off term by term (j_ξ, R° on ξ⊗ξ⊗S), one tensor at a time
SymTensor symbol_displayed(const Geometry& g, const Vec& xi, const SymTensor& s);
// h² e^{-iφ/h} Q(e^{iφ/h} S) in the limit: Q applied to the jet whose only entry is ∇²S = -ξ⊗ξ⊗S
SymTensor symbol_from_jet(const Geometry& g, const Vec& xi, const SymTensor& s);

// basis of ker ι_ξ ⊂ S^2 and a rational basis of ξ^⊥ (as columns)
std::vector<SymTensor> kernel_iota(int n, const Vec& xi);
Mat perp_basis(const Vec& xi);

struct InjectivityResult {
  int dim_kernel = 0;  // dim ker ι_ξ
  int rank = 0;        // rank of S ↦ (σ_Q S)|ξ^⊥ on ker ι_ξ
  bool modular = false;
  bool injective() const { return rank == dim_kernel; }
};
// Π σ_Q S = 0 iff σ_Q S ∈ im j_ξ iff σ_Q S vanishes on ξ^⊥.
// via_kernel: use a computed kernel basis and restrict each image (slow, for cross-checks)
InjectivityResult solenoidal_injectivity(const Geometry& g, const Vec& xi, bool via_kernel = false);

// ι_ξ L(h) - (p/(p+2)) L(ι_ξ h) - (2/(p+2)) j_ξ h
SymTensor iota_l_residual(const SymTensor& h, const Vec& xi);

// the pointwise scalar factors at a unit vector v
// complex/H: |ξ|² - ½ Σ ξ(J_i v)²,  octonion: 7|ξ|² - Σ_j λ_j² ξ(Y_j)²
struct ScalarBound {
  Scalar value;
  Scalar bound;        // ½|ξ|² or 3|ξ|²
  Scalar certificate;  // explicit sum of squares equal to value - bound
  bool holds() const { return value.is_real() && bound.is_real() && value.re >= bound.re; }
};
ScalarBound scalar_bound(const Geometry& g, const Vec& xi, const Vec& v);

}  // namespace rk
