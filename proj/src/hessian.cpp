#include "rigiditykit/hessian.hpp"

#include <stdexcept>

namespace rk {

namespace {

// S(z, w) for a 2-tensor
Scalar bilin(const SymTensor& s, const Vec& z, const Vec& w) {
  const IndexSet& is = s.indices();
  Scalar acc;
  for (size_t q = 0; q < s.size(); ++q) {
    if (s[q].is_zero()) continue;
    const Idx* I = is.at(q);
    Scalar t = z[I[0]] * w[I[1]];
    if (I[0] != I[1]) t += z[I[1]] * w[I[0]];
    acc.addmul(s[q], t);
  }
  return acc;
}

// ∇²_{x,y}S(z,w)
Scalar hess_eval(const TensorJet& s, const Vec& x, const Vec& y, const Vec& z, const Vec& w) {
  int n = s.dim();
  Scalar acc;
  for (int a = 0; a < n; ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (y[b].is_zero()) continue;
      acc.addmul(x[a] * y[b], bilin(s.level(2)[static_cast<size_t>(a) * n + b], z, w));
    }
  }
  return acc;
}

Scalar value_of(const SymTensor& t) { return t[0]; }

TensorJet trace_jet(const TensorJet& s) {
  return map_levels(s, s.degree() - 2, [](const SymTensor& t) { return trace(t); });
}

// Sym of the 3-tensor jet (a,b,c) ↦ ∇_{Ja}S(b,Jc), one derivative consumed
TensorJet w_jet(const TensorJet& s, const SparseCols& j) {
  const Geometry& g = s.geometry();
  int n = g.n();
  TensorJet r(g, 3, s.order() - 1);
  for (int lv = 0; lv < r.order() + 1; ++lv) {
    const auto& up = s.level(lv + 1);
    for (size_t f = 0; f < r.level(lv).size(); ++f) {
      RawTensor raw(n, 3);
      for (int a = 0; a < n; ++a)
        for (const auto& [e, ja] : j.cols[a]) {
          // Ja = Σ_e J_{e,a} e_e
          const SymTensor& su = up[f * n + e];
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
              Scalar acc;
              for (const auto& [d, jc] : j.cols[c]) acc.addmul(jc, su.get({b, d}));
              if (!acc.is_zero()) {
                int idx[3] = {a, b, c};
                raw.at(idx).addmul(ja, acc);
              }
            }
        }
      r.level(lv)[f] = symmetrize(raw);
    }
  }
  return r;
}

// octonion: Sym of (a,b,c) ↦ Σ K(a,b;e,f) ∇_e S(c,f), K = (R(e,a,b,f) - δ_ab δ_ef + δ_ea δ_bf)/3
TensorJet w_jet_octonion(const TensorJet& s) {
  const Geometry& g = s.geometry();
  int n = g.n();
  TensorJet r(g, 3, s.order() - 1);
  Scalar third(1, 3);
  for (int lv = 0; lv < r.order() + 1; ++lv) {
    const auto& up = s.level(lv + 1);
    for (size_t f = 0; f < r.level(lv).size(); ++f) {
      RawTensor raw(n, 3);
      for (int e = 0; e < n; ++e) {
        const SymTensor& se = up[f * n + e];
        for (int a = 0; a < n; ++a)
          for (const CurvEntry& ce : g.R_ab(e, a)) {
            Scalar val(mpq_class(ce.val / 3));
            for (int c = 0; c < n; ++c) {
              int idx[3] = {a, ce.c, c};
              raw.at(idx).addmul(val, se.get({c, ce.d}));
            }
          }
      }
      for (int c = 0; c < n; ++c) {
        Scalar tr;
        for (int e = 0; e < n; ++e) tr += up[f * n + e].get({c, e});
        tr *= third;
        for (int a = 0; a < n; ++a) {
          int idx[3] = {a, a, c};
          raw.at(idx) -= tr;
          for (int b = 0; b < n; ++b) {
            int id2[3] = {a, b, c};
            raw.at(id2).addmul(third, up[f * n + a].get({c, b}));
          }
        }
      }
      r.level(lv)[f] = symmetrize(raw);
    }
  }
  return r;
}

// ω_d = -Σ R(i,a,c,d) ∇_i S(a,c) as a 1-form jet
TensorJet omega_jet(const TensorJet& s) {
  const Geometry& g = s.geometry();
  int n = g.n();
  TensorJet r(g, 1, s.order() - 1);
  for (int lv = 0; lv < r.order() + 1; ++lv) {
    const auto& up = s.level(lv + 1);
    for (size_t f = 0; f < r.level(lv).size(); ++f) {
      Vec w(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        const SymTensor& si = up[f * n + i];
        for (int a = 0; a < n; ++a)
          for (const CurvEntry& ce : g.R_ab(i, a)) w[ce.d].addmul(Scalar(mpq_class(-ce.val)), si.get({a, ce.c}));
      }
      r.level(lv)[f] = from_vector(w);
    }
  }
  return r;
}

Scalar dstar_d(const TensorJet& f) { return value_of(d_star(d_sym(f)).value()); }

}  // namespace

TensorJet d_j(const TensorJet& t, int which) {
  const SparseCols& j = t.geometry().j_sparse().at(which);
  return compose_jet(d_sym(compose_jet(t, j)), j);
}

SymTensor sym_hessian(const TensorJet& s) { return symmetrize(hessian_raw(s)); }

SymTensor sym_r_circ_hessian(const TensorJet& s) { return symmetrize(s.geometry().r_circ_raw(hessian_raw(s))); }

SymTensor q_apply(const TensorJet& s, QForm form) {
  if (s.degree() != 2) throw std::invalid_argument("Q acts on symmetric 2-tensors");
  if (s.order() < 2) throw BudgetError("Q needs a jet of order >= 2");
  const Geometry& g = s.geometry();
  int n = g.n();
  const SymTensor& S = s.value();
  SymTensor lap = connection_laplacian(s).value();
  Scalar tr = value_of(trace(S));
  SymTensor g0 = metric(n);
  switch (g.tag()) {
    case Kind::Real: {
      SymTensor q = Scalar(-1, 2) * S;
      q.addmul(Scalar(1, 4), lap);
      q.addmul(Scalar(1, 2) * tr, g0);
      return q;
    }
    case Kind::Complex:
    case Kind::Quaternion: {
      SymTensor inner2 = Scalar(-1) * S;
      inner2.addmul(tr, g0);
      for (int i = 0; i < g.num_j(); ++i) inner2 += compose(S, g.j_sparse()[i]);
      SymTensor q = l_raise(Scalar(1, 4) * lap + Scalar(1, 2) * inner2);
      for (int i = 0; i < g.num_j(); ++i) q.addmul(Scalar(-1, 8), d_j(d_j(s, i), i).value());
      return q;
    }
    case Kind::Octonion: {
      SymTensor a = Scalar(1, 3) * tr * g0;
      a.addmul(form == QForm::Displayed ? Scalar(1, 6) : Scalar(-1, 3), S);
      a.addmul(Scalar(-1, 6), g.r_circ(S));
      a.addmul(Scalar(7, 24), lap);
      SymTensor q = l_raise(a);
      q.addmul(Scalar(-1, 24), sym_r_circ_hessian(s));
      return q;
    }
  }
  throw std::logic_error("unknown geometry");
}

TensorJet rebind(const TensorJet& t, const Geometry& g) {
  if (g.n() != t.dim()) throw std::invalid_argument("rebind: dimension mismatch");
  TensorJet r(g, t.degree(), t.order());
  for (int j = 0; j <= t.order(); ++j) r.level(j) = t.level(j);
  return r;
}

Scalar ricci_rearrange_residual(const TensorJet& s, const AdaptedFrame& fr, int j) {
  if (s.order() < 2) throw BudgetError("Ricci rearrangement needs order >= 2");
  const Vec& v = fr.v;
  const Vec& y = fr.y.at(j);
  Scalar l2(fr.lambda[j] * fr.lambda[j]);
  const SymTensor& S = s.value();
  Scalar r = hess_eval(s, y, v, v, y) - hess_eval(s, v, y, v, y);
  r -= l2 * bilin(S, y, y);
  r += l2 * bilin(S, v, v);
  return r;
}

Scalar ricci_rearrange_zeroth(const Geometry& g, const SymTensor& s, const AdaptedFrame& fr, int j) {
  const Vec& v = fr.v;
  const Vec& y = fr.y.at(j);
  Scalar l2(fr.lambda[j] * fr.lambda[j]);
  Scalar r = bilin(s, g.curvature(y, v, v), y) + bilin(s, g.curvature(y, v, y), v);
  r -= l2 * (bilin(s, y, y) - bilin(s, v, v));
  return r;
}

Scalar mu_weight_inv(int lambda) { return Scalar(lambda == 2 ? 2 : 1); }

VofS v_of_s(const TensorJet& s, const Vec& v) {
  const Geometry& g = s.geometry();
  int n = g.n();
  AdaptedFrame fr = g.adapted_frame(v);
  const SymTensor& S = s.value();
  VofS out;
  Scalar sum_d, sum_s;
  for (int j = 0; j < n; ++j) {
    const Vec& y = fr.y[j];
    Scalar mi = mu_weight_inv(fr.lambda[j]);
    Scalar mu = Scalar(1) / mi;
    sum_d.addmul(mu, hess_eval(s, y, y, v, v) - Scalar(2) * hess_eval(s, v, y, v, y));
    sum_s.addmul(mi, bilin(S, y, y));
  }
  out.s_term = Scalar(1, 2) * sum_s;
  out.value = Scalar(-1, 2) * bilin(S, v, v) + Scalar(-1, 4) * sum_d + out.s_term;
  out.q_value = q_apply(s).eval(v);
  out.q_derived_value = g.tag() == Kind::Octonion ? q_apply(s, QForm::FrameDerived).eval(v) : out.q_value;

  Scalar tr = value_of(trace(S));
  switch (g.tag()) {
    case Kind::Real:
      out.s_term_closed = Scalar(1, 2) * tr;
      break;
    case Kind::Complex:
    case Kind::Quaternion: {
      out.s_term_closed = Scalar(1, 2) * tr;
      for (int i = 0; i < g.num_j(); ++i) out.s_term_closed += Scalar(1, 2) * compose(S, g.j_sparse()[i]).eval(v);
      break;
    }
    case Kind::Octonion:
      out.s_term_closed = Scalar(1, 3) * tr + Scalar(1, 6) * bilin(S, v, v) - Scalar(1, 6) * g.r_circ(S).eval(v);
      break;
  }

  // dropped X-derivatives: -½ X π_1^*(D*S), then the kind-specific ones
  out.dropped = Scalar(-1, 2) * d_sym(d_star(s)).value().eval(v);
  if (g.num_j() > 0) {
    for (int i = 0; i < g.num_j(); ++i)
      out.dropped += Scalar(-1, 4) * d_sym(w_jet(s, g.j_sparse()[i])).value().eval(v);
  } else if (g.tag() == Kind::Octonion) {
    out.dropped += Scalar(-1, 4) * d_sym(w_jet_octonion(s)).value().eval(v);
    out.dropped += Scalar(1, 24) * d_sym(d_sym(s)).value().eval(v);
  }
  return out;
}

std::pair<Scalar, Scalar> dstar_l_coeffs(int p) { return {Scalar(p, p + 2), Scalar(-2, p + 2)}; }

SymTensor dstar_l_residual(const TensorJet& h) {
  int p = h.degree();
  auto [a, b] = dstar_l_coeffs(p);
  TensorJet lh = map_levels(h, p + 2, [](const SymTensor& t) { return l_raise(t); });
  SymTensor r = d_star(lh).value();
  if (p > 0) r.addmul(Scalar(-1) * a, l_raise(d_star(h).value()));
  r.addmul(Scalar(-1) * b, d_sym(h).value());
  return r;
}

AveragePairing average_pairing(const TensorJet& s) {
  const Geometry& g = s.geometry();
  int n = g.n();
  SymTensor g0 = metric(n);
  SymTensor lg0 = l_raise(g0);
  SymTensor q = q_apply(s);
  Scalar sg = inner(s.value(), g0);
  TensorJet trj = trace_jet(s);
  AveragePairing out;
  if (g.tag() == Kind::Real) {
    out.direct = inner(q, g0);
    out.volume_coeff = Scalar(n - 1, 2);
    out.divergence = Scalar(1, 8) * dstar_d(trj);
  } else {
    out.direct = inner(q, lg0);
    // <L(T), L(g0)> = κ <T, g0>
    Scalar kappa = inner(lg0, lg0) / inner(g0, g0);
    Scalar lap_div = dstar_d(trj);  // <∇*∇S, g0> = ½ D*D trS
    if (g.tag() == Kind::Octonion) {
      Scalar rho = value_of(trace(g.r_circ(g0))) / Scalar(n);
      Scalar sigma(mpq_class(0));
      for (int a = 0; a < n; ++a) sigma += Scalar(g.R(0, a, a, 0));
      out.volume_coeff = kappa * (Scalar(n, 3) + Scalar(1, 6) - rho / Scalar(6));
      out.divergence = kappa * Scalar(7, 48) * lap_div;
      // <R°∇²S, L(g0)> = (σ D*D trS - 2 D*ω)/72
      Scalar rr = sigma * lap_div - Scalar(2) * value_of(d_star(omega_jet(s)).value());
      out.divergence += Scalar(-1, 24 * 72) * rr;
    } else {
      int r = g.num_j();
      out.volume_coeff = kappa * Scalar(n - 1 + r, 2);
      out.divergence = kappa * Scalar(1, 8) * lap_div;
      // -⅛<D^J D^J S, L(g0)> = ⅛<DD(S∘J), L(g0)> = (1/576) D*(2D*T - d trT), T = S∘J
      for (int i = 0; i < r; ++i) {
        TensorJet t = compose_jet(s, g.j_sparse()[i]);
        TensorJet one = Scalar(2) * d_star(t);
        one -= d_sym(trace_jet(t));
        out.divergence += Scalar(1, 576) * value_of(d_star(one).value());
      }
    }
  }
  out.volume = out.volume_coeff * sg;
  return out;
}

WResult w_of_s(const TensorJet& s) {
  const Geometry& g = s.geometry();
  if (g.tag() != Kind::Complex) throw DomainError("W(S) is built for the complex model");
  if (s.degree() != 2 || s.order() < 2) throw BudgetError("W(S) needs a 2-tensor jet of order >= 2");
  int n = g.n();
  JetFunction u = JetFunction::pullback(s);
  JetFunction nf = u.normal_form();
  WResult out{JetFunction(g, s.order()), JetFunction(g, s.order()), TensorJet(g, 3, s.order() - 1),
              SymTensor(n, 2), SymTensor(n, 2), false, SymTensor(n, 4), JetFunction(g, 0), false};
  out.f.add(nf.omega(2));
  out.h.add(nf.omega(0));

  JetFunction pf = op_x_plus(op_j(out.f)) + op_h_plus(op_v(out.f));
  pf *= Scalar(-1, 8);
  out.p = pf.omega(3);

  JetFunction vfh = op_h(op_h(u));
  JetFunction xp(g, out.p.order());
  xp.add(out.p);
  vfh -= Scalar(8) * op_x(xp);
  JetFunction vnf = vfh.normal_form();
  out.v_omega4_zero = vnf.omega(4).is_zero();
  SymTensor g0 = metric(n);
  out.q0 = vnf.omega(2).value();
  out.q0.addmul(value_of(vnf.omega(0).value()), g0);

  const SymTensor& S = s.value();
  Scalar tr = value_of(trace(S));
  SymTensor w = Scalar(1, 4) * connection_laplacian(s).value();
  SymTensor mid = Scalar(-1) * S;
  mid.addmul(tr, g0);
  mid += compose(S, g.j_sparse()[0]);
  w.addmul(Scalar(1, 2), mid);
  w.addmul(Scalar(1, 8), out.q0);
  out.w = w;
  out.residual = l_raise(w) + d_sym(out.p).value() - q_apply(s);

  JetFunction f2 = v_eigenpart(out.f, 2, 0), f0 = v_eigenpart(out.f, 2, 1), fm2 = v_eigenpart(out.f, 2, 2);
  auto eta = [](const JetFunction& x, int d) { return op_eta(x, 1, d); };
  JetFunction ob = eta(eta(f2, -1), -1) + eta(eta(fm2, 1), 1);
  ob *= Scalar(1, 2);
  JetFunction mix = eta(eta(f0, -1), 1) + eta(eta(f0, 1), -1);
  ob -= Scalar(1, 4) * mix;
  out.obstruction = ob.normal_form();
  JetFunction rj(g, 0);
  rj.add(parallel_jet(g, out.residual, 0));
  out.residual_is_obstruction = (rj - out.obstruction).is_zero();
  return out;
}

namespace {

Vec flatten(const TensorJet& t) {
  Vec out;
  for (int j = 0; j <= t.order(); ++j)
    for (const auto& s : t.level(j)) out.insert(out.end(), s.coeffs().begin(), s.coeffs().end());
  return out;
}

struct Reducer {
  struct Row {
    Vec v;
    int pivot;
    Vec comb;  // combination of the accepted columns
  };
  std::vector<Row> basis;
  size_t ncols = 0;

  // reduce x (with combination c) against the basis in place
  void reduce(Vec& x, Vec& c) const {
    for (const Row& r : basis) {
      if (x[r.pivot].is_zero()) continue;
      Scalar f = x[r.pivot] / r.v[r.pivot];
      for (size_t i = 0; i < x.size(); ++i)
        if (!r.v[i].is_zero()) x[i] -= f * r.v[i];
      for (size_t i = 0; i < r.comb.size(); ++i)
        if (!r.comb[i].is_zero()) c[i] -= f * r.comb[i];
    }
  }
};

}  // namespace

TensorJet solenoidal_jet(const Geometry& g, int order, Rng& rng) {
  if (order < 1) throw BudgetError("solenoidal jets need order >= 1");
  TensorJet s0 = random_jet(g, 2, order, rng);
  Vec target = flatten(d_star(s0));
  size_t neq = target.size();

  // candidate columns: unit entries of levels 1..order, canonicalised
  std::vector<TensorJet> accepted;
  Reducer red;
  for (int j = 1; j <= order && red.basis.size() < neq; ++j) {
    TensorJet probe(g, 2, order);
    for (size_t f = 0; f < probe.level(j).size() && red.basis.size() < neq; ++f)
      for (size_t q = 0; q < probe.level(j)[f].size() && red.basis.size() < neq; ++q) {
        TensorJet e(g, 2, order);
        e.level(j)[f][q] = Scalar(1);
        TensorJet ce = canonicalize(e);
        Vec col = flatten(d_star(ce));
        Vec comb(accepted.size() + 1);
        comb.back() = Scalar(1);
        for (auto& r : red.basis) r.comb.resize(accepted.size() + 1);
        red.reduce(col, comb);
        int piv = -1;
        for (size_t i = 0; i < col.size(); ++i)
          if (!col[i].is_zero()) {
            piv = static_cast<int>(i);
            break;
          }
        if (piv < 0) continue;
        accepted.push_back(std::move(ce));
        red.basis.push_back({std::move(col), piv, std::move(comb)});
      }
  }
  for (auto& r : red.basis) r.comb.resize(accepted.size());
  Vec x = target, c(accepted.size());
  red.reduce(x, c);
  if (!is_zero(x)) throw std::runtime_error("solenoidal projection: divergence not in the image");
  // target + Σ c_k col_k = 0 after reduction, so S = s0 + Σ c_k E_k has D*S = 0
  TensorJet s = s0;
  for (size_t k = 0; k < accepted.size(); ++k)
    if (!c[k].is_zero()) s.addmul(c[k], accepted[k]);
  return s;
}

}  // namespace rk
