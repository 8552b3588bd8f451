#include "rigiditykit/weitzenbock.hpp"

namespace rk {

namespace {

void need_closed_form(const Geometry& g) {
  if (g.tag() == Kind::Octonion) throw DomainError("the Weitzenböck expansion is only carried out for real, complex and quaternionic models");
}

size_t ix(int n, int a, int b, int c, int d) { return ((static_cast<size_t>(a) * n + b) * n + c) * n + d; }

SymTensor sum_compose_j(const Geometry& g, const SymTensor& s) {
  SymTensor out(s.dim(), s.degree());
  for (int i = 0; i < g.num_j(); ++i) out += compose(s, g.J(i));
  return out;
}

SymTensor trace_free_sample(const Geometry& g, Rng& rng) { return rng.trace_free(g.n(), 2); }

}  // namespace

bool is_zero(const RawTensor& t) {
  for (size_t i = 0; i < t.size(); ++i)
    if (!t.flat(i).is_zero()) return false;
  return true;
}

RawTensor weitzenbock_lhs(const TensorJet& s) {
  const Geometry& g = s.geometry();
  need_closed_form(g);
  if (s.degree() != 2 || s.order() < 2) throw BudgetError("Weitzenböck needs a 2-tensor jet of order 2");
  int n = g.n();
  RawTensor h = hessian_raw(s);  // (a,b,c,d) ↦ ∇_a∇_b S(c,d)
  RawTensor out(n, 2);
  // d∇ d∇* S(X,Z) = ∇_X(d∇*S)(Z) = -Σ_i ∇_X∇_i S(i,Z)
  // d∇* d∇ S(Y,Z) = -Σ_i (∇_i∇_i S(Y,Z) - ∇_i∇_Y S(i,Z))
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      Scalar acc;
      for (int i = 0; i < n; ++i) {
        acc -= h.flat(ix(n, y, i, i, z));
        acc -= h.flat(ix(n, i, i, y, z));
        acc += h.flat(ix(n, i, y, i, z));
      }
      out.flat(static_cast<size_t>(y) * n + z) = acc;
    }
  return out;
}

SymTensor weitzenbock_rhs(const TensorJet& s, int sign) {
  const Geometry& g = s.geometry();
  need_closed_form(g);
  const SymTensor& v = s.value();
  SymTensor out = connection_laplacian(s.truncated(2)).value();
  SymTensor curv = g.r_circ(v) - g.s_ric(v);
  out.addmul(Scalar(-sign), curv);
  return out;
}

RawTensor weitzenbock_residual(const TensorJet& s, int sign) {
  RawTensor l = weitzenbock_lhs(s);
  RawTensor r = to_raw(weitzenbock_rhs(s, sign));
  for (size_t i = 0; i < l.size(); ++i) l.flat(i) -= r.flat(i);
  return l;
}

Scalar ricci_closed_form(Kind k, int n) {
  switch (k) {
    case Kind::Real: return Scalar(-(n - 1));
    case Kind::Complex: return Scalar(-(n + 2));
    case Kind::Quaternion: return Scalar(-(n + 8));
    case Kind::Octonion: return Scalar(-36);
  }
  return Scalar(0);
}

SymTensor r_circ_closed(const Geometry& g, const SymTensor& s0) {
  need_closed_form(g);
  SymTensor out = s0;
  out.addmul(Scalar(-3), sum_compose_j(g, s0));
  return out;
}

Scalar r_circ_frame(const Geometry& g, const SymTensor& s0, const Vec& v) {
  AdaptedFrame fr = g.adapted_frame(v);
  Scalar acc;
  for (size_t j = 0; j < fr.y.size(); ++j) {
    int l = fr.lambda[j];
    if (l) acc -= Scalar(l * l) * s0.eval(fr.y[j]);
  }
  return acc;
}

Scalar r_circ_frame_closed(const Geometry& g, const SymTensor& s0, const Vec& v) {
  AdaptedFrame fr = g.adapted_frame(v);
  Scalar acc = s0.eval(v) - trace(s0)[0];
  for (size_t j = 0; j < fr.y.size(); ++j)
    if (fr.lambda[j] == 2) acc -= Scalar(3) * s0.eval(fr.y[j]);
  return acc;
}

bool CurvatureRow::passed() const {
  return ricci == ricci_closed && ricci == ricci_lambda && r_circ_g0 == ricci && r_circ_tensor && r_circ_fiber && s_ric &&
         j_invariant && pairing == pairing_closed;
}

CurvatureRow curvature_term_row(const Geometry& g, Rng& rng) {
  int n = g.n();
  CurvatureRow row;
  row.ricci = Scalar(g.ricci_factor());
  row.ricci_closed = ricci_closed_form(g.tag(), n);
  Vec v = rng.unit_vector(n);
  AdaptedFrame fr = g.adapted_frame(v);
  for (int l : fr.lambda) row.ricci_lambda -= Scalar(l * l);
  SymTensor rg = g.r_circ(metric(n));
  row.r_circ_g0 = rg[0];
  if (rg != rg[0] * metric(n)) row.r_circ_g0 = Scalar(0, 1);  // not a multiple of g0; fails the row

  SymTensor s0 = trace_free_sample(g, rng);
  SymTensor rs = g.r_circ(s0);
  row.s_ric = g.s_ric(s0) == row.ricci * s0;
  row.r_circ_fiber = rs.eval(v) == r_circ_frame(g, s0, v) && rs.eval(v) == r_circ_frame_closed(g, s0, v);
  Scalar norm = inner(s0, s0);
  row.pairing = inner(rs - g.s_ric(s0), s0);
  if (g.tag() == Kind::Octonion) {
    row.r_circ_tensor = true;
    row.j_invariant = true;
    row.pairing_closed = inner(rs, s0) + Scalar(36) * norm;
    return row;
  }
  row.r_circ_tensor = rs == r_circ_closed(g, s0);
  SymTensor sj = sum_compose_j(g, s0);
  row.pairing_closed = Scalar(n + 3 * g.num_j()) * norm - Scalar(3) * inner(sj, s0);
  row.j_invariant = true;
  if (g.tag() == Kind::Quaternion) {
    Geometry rot(GeometryKind{g.tag(), n}, rng.rotation3());
    row.j_invariant = sum_compose_j(rot, s0) == sj && !(rot.J(0) == g.J(0));
  }
  return row;
}

}  // namespace rk
