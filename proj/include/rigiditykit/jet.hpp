#pragma once
// finite covariant-derivative jets at a point of a symmetric space
//
// level j holds ∇^j T as n^j symmetric m-tensors indexed by the derivative
// tuple (a_1..a_j), a_1 outermost. Curvature is parallel, so the Ricci
// identity fixes everything except the totally symmetric part of each level.
#include <functional>
#include <map>

#include "rigiditykit/fiber.hpp"
#include "rigiditykit/geometry.hpp"
#include "rigiditykit/rng.hpp"

namespace rk {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class TensorJet {
 public:
  TensorJet(const Geometry& g, int m, int order);

  const Geometry& geometry() const { return *g_; }
  int dim() const { return g_->n(); }
  int degree() const { return m_; }
  int order() const { return order_; }

  std::vector<SymTensor>& level(int j) { return lv_.at(j); }
  const std::vector<SymTensor>& level(int j) const { return lv_.at(j); }
  const SymTensor& value() const { return lv_[0][0]; }
  SymTensor& value() { return lv_[0][0]; }
  SymTensor& at(std::initializer_list<int> a);
  const SymTensor& at(std::initializer_list<int> a) const;

  bool is_zero() const;
  TensorJet truncated(int k) const;
  TensorJet& operator+=(const TensorJet& o);
  TensorJet& operator-=(const TensorJet& o);
  TensorJet& operator*=(const Scalar& s);
  void addmul(const Scalar& s, const TensorJet& o);
  friend TensorJet operator+(TensorJet a, const TensorJet& b) { return a += b; }
  friend TensorJet operator-(TensorJet a, const TensorJet& b) { return a -= b; }
  friend TensorJet operator*(const Scalar& s, TensorJet a) { return a *= s; }
  friend bool operator==(const TensorJet& a, const TensorJet& b);

 private:
  const Geometry* g_;
  int m_, order_;
  std::vector<std::vector<SymTensor>> lv_;
};

// apply f to every stored tensor (f must be linear and commute with R-action)
TensorJet map_levels(const TensorJet& t, int new_degree, const std::function<SymTensor(const SymTensor&)>& f);

// Ricci canonical form; idempotent, keeps the totally symmetric parts
TensorJet canonicalize(const TensorJet& t);
bool is_canonical(const TensorJet& t);
// ∇^j T(..u,w..) - ∇^j T(..w,u..) from level j-2, for the tuple a with (u,w) at (p,p+1)
SymTensor swap_defect(const TensorJet& t, const std::vector<int>& a, int p);

TensorJet random_jet(const Geometry& g, int m, int order, Rng& rng, bool trace_free = false);
// jet of a parallel tensor (all derivatives zero); caller guarantees R·t = 0
TensorJet parallel_jet(const Geometry& g, const SymTensor& t, int order);

// derived jets
TensorJet d_sym(const TensorJet& t);                       // Sym ∇T
TensorJet d_dir(const TensorJet& t, const SparseCols& a);  // Sym of (x,...) ↦ ∇_{Ax}T(...)
TensorJet d_star(const TensorJet& t);                      // -tr ∇T
TensorJet nabla_along(const TensorJet& t, const Vec& w);  // ∇_w T
TensorJet connection_laplacian(const TensorJet& t);       // ∇*∇T = -Σ ∇²_{e_i,e_i}T
TensorJet compose_jet(const TensorJet& t, const SparseCols& a);  // T(A·,...,A·) levelwise
// level-2 entries as a raw (2+m)-tensor (a, b, I) ↦ ∇²_{a,b}T(I)
RawTensor hessian_raw(const TensorJet& t);

// function u = Σ_m π_m^* T_m on the fibre over the base point
class JetFunction {
 public:
  JetFunction(const Geometry& g, int order) : g_(&g), order_(order) {}
  static JetFunction pullback(const TensorJet& t);

  const Geometry& geometry() const { return *g_; }
  int order() const { return order_; }
  const std::map<int, TensorJet>& components() const { return c_; }
  void add(const TensorJet& t);

  // all components trace-free, zero components dropped
  JetFunction normal_form() const;
  bool is_zero() const;  // exact, on the normal form
  Scalar eval(const Vec& v) const;

  JetFunction& operator+=(const JetFunction& o);
  JetFunction& operator-=(const JetFunction& o);
  JetFunction& operator*=(const Scalar& s);
  friend JetFunction operator+(JetFunction a, const JetFunction& b) { return a += b; }
  friend JetFunction operator-(JetFunction a, const JetFunction& b) { return a -= b; }
  friend JetFunction operator*(const Scalar& s, JetFunction a) { return a *= s; }
  // component of the normal form in Ω_m (zero jet if absent)
  TensorJet omega(int m) const;

 private:
  const Geometry* g_;
  int order_;
  std::map<int, TensorJet> c_;
};

JetFunction map_components(const JetFunction& u, const std::function<TensorJet(const TensorJet&)>& f);

// vector fields on SM, realised on jets
JetFunction op_x(const JetFunction& u);
JetFunction op_x_plus(const JetFunction& u);
JetFunction op_x_minus(const JetFunction& u);
// horizontal field dπ^{-1}(A v); H = dπ^{-1}(-Jv)
JetFunction op_horizontal(const JetFunction& u, const SparseCols& a);
JetFunction op_h(const JetFunction& u, int which = 0);
JetFunction op_h_plus(const JetFunction& u, int which = 0);
JetFunction op_h_minus(const JetFunction& u, int which = 0);
JetFunction op_j(const JetFunction& u, int which = 0);      // u(Jv)
JetFunction op_j_inv(const JetFunction& u, int which = 0);  // u(J^{-1}v)
JetFunction op_v(const JetFunction& u);
// H by conjugation: J^{-1} X J (see the sign note in the implementation)
JetFunction op_h_conj(const JetFunction& u, int which = 0);
// η_ε^δ = (X_ε + δ i H_ε)/2, eps,delta ∈ {+1,-1}
JetFunction op_eta(const JetFunction& u, int eps, int delta);
JetFunction conj(const JetFunction& u);
// Δ_H^tot = -Σ_i (e_i^h)^2
JetFunction delta_h_tot(const JetFunction& u);
// part of u in E^{i(m-2k)}_m (m <= 3 unless extended, see v_eigendecompose)
JetFunction v_eigenpart(const JetFunction& u, int m, int k, bool extended = false);

}  // namespace rk
