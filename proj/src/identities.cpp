#include "rigiditykit/identities.hpp"

namespace rk {

namespace {

const Scalar kI(mpq_class(0), mpq_class(1));

void need_complex(const Geometry& g, const char* what) {
  if (g.tag() != Kind::Complex) throw DomainError(std::string(what) + " needs the complex model");
}

}  // namespace

CommutatorResiduals commutator_residuals(const JetFunction& u) {
  const Geometry& g = u.geometry();
  need_complex(g, "the commutator identities");
  if (u.order() < 2) throw BudgetError("commutator identities need order >= 2");
  auto X = [](const JetFunction& w) { return op_x(w); };
  auto H = [](const JetFunction& w) { return op_h(w); };
  auto V = [](const JetFunction& w) { return op_v(w); };
  auto Xp = [](const JetFunction& w) { return op_x_plus(w); };
  auto Xm = [](const JetFunction& w) { return op_x_minus(w); };
  auto Hp = [](const JetFunction& w) { return op_h_plus(w); };
  auto Hm = [](const JetFunction& w) { return op_h_minus(w); };
  auto eta = [](const JetFunction& w, int e, int d) { return op_eta(w, e, d); };

  CommutatorResiduals r{u, u, u, u, u, u, u};
  r.xv = X(V(u)) - V(X(u)) - H(u);
  r.vh = V(H(u)) - H(V(u)) - X(u);
  r.hx = H(X(u)) - X(H(u)) + Scalar(4) * V(u);
  r.comm2 = Hp(Xm(u)) + Hm(Xp(u)) - Xp(Hm(u)) - Xm(Hp(u)) + Scalar(4) * V(u);
  r.comm3 = eta(eta(u, 1, -1), 1, 1) - eta(eta(u, 1, 1), 1, -1);
  // -η_-^-η_+^+ + η_+^+η_-^-: operators compose right to left
  JetFunction lhs = Scalar(4) * (eta(eta(u, -1, -1), 1, 1) - eta(eta(u, 1, 1), -1, -1));
  JetFunction rhs = Xp(Xm(u)) - Xm(Xp(u)) + Hp(Hm(u)) - Hm(Hp(u)) - Scalar(4) * kI * V(u);
  r.pestov = lhs - rhs;
  r.h_conj = op_h_conj(u) - H(u);
  return r;
}

Scalar x_and_d_residual(const TensorJet& t, const Vec& v) {
  if (t.order() < 1) throw BudgetError("X needs order >= 1");
  Scalar direct;
  for (int a = 0; a < t.dim(); ++a)
    if (!v[a].is_zero()) direct += v[a] * t.level(1)[a].eval(v);
  return direct - d_sym(t).value().eval(v);
}

bool eta_mapping_ok(const JetFunction& u, int m, int k, int eps, int delta) {
  const Geometry& g = u.geometry();
  need_complex(g, "the eta operators");
  int mt = m + eps;
  if (mt < 0) return op_eta(u, eps, delta).is_zero();
  if (mt > 3) throw std::out_of_range("mapping property is checked for target degree <= 3");
  JetFunction w = op_eta(u, eps, delta).normal_form();
  for (const auto& [deg, t] : w.components())
    if (deg != mt && !t.is_zero()) return false;
  int kt = k + (eps - delta) / 2;
  for (int l = 0; l <= mt; ++l) {
    if (l == kt) continue;
    if (!v_eigenpart(w, mt, l).is_zero()) return false;
  }
  return true;
}

JetFunction delta_h_residual(const TensorJet& s) {
  JetFunction u = JetFunction::pullback(s);
  return delta_h_tot(u) - JetFunction::pullback(connection_laplacian(s));
}

SymTensor jandv_residual(const SymTensor& t, const SparseCols& j) {
  SymTensor r = compose(t, j);
  r -= t;
  r.addmul(Scalar(-1, 2), v_apply(v_apply(t, j), j));
  return r;
}

SymTensor eqtriple_residual(const SymTensor& t, const SparseCols& j) {
  SymTensor vt = v_apply(t, j);
  SymTensor r = v_apply(v_apply(vt, j), j);
  r.addmul(Scalar(7), vt);
  r.addmul(Scalar(-6), compose(t, j));
  return r;
}

SymTensor j_inverse_residual(const SymTensor& t, const Mat& j) {
  SymTensor r = compose(t, Scalar(-1) * j);
  r.addmul(Scalar(t.degree() % 2 ? 1 : -1), compose(t, j));
  return r;
}

Scalar v_antisymmetry_defect(const SymTensor& p, const SymTensor& q, const SparseCols& j) {
  return fiber_inner(pullback(v_apply(p, j)), pullback(q)) + fiber_inner(pullback(p), pullback(v_apply(q, j)));
}

SymTensor trace_v_residual(const SymTensor& t, const SparseCols& j) {
  SymTensor r = trace(v_apply(t, j));
  r -= v_apply(trace(t), j);
  return r;
}

}  // namespace rk
