#include "rigiditykit/coercivity.hpp"

#include <array>
#include <map>

#include "rigiditykit/weitzenbock.hpp"

namespace rk {

namespace {

bool le(const Scalar& a, const Scalar& b) { return a.is_real() && b.is_real() && a.re <= b.re; }
bool gt(const Scalar& a, const Scalar& b) { return a.is_real() && b.is_real() && a.re > b.re; }

LedgerEntry entry(std::string name, std::string inputs, const Scalar& value, const Scalar& claimed, std::string rel) {
  LedgerEntry e{std::move(name), std::move(inputs), value, claimed, std::move(rel)};
  if (e.relation == "==") e.verdict = value == claimed;
  else if (e.relation == "<=") {
    e.verdict = le(value, claimed);
    e.tight = value == claimed;
  } else if (e.relation == ">") e.verdict = gt(value, claimed);
  return e;
}

Scalar lam(int m, int n) { return lambda_normalised(m, n); }

}  // namespace

bool ConstantLedger::all_pass() const {
  for (const auto& e : entries)
    if (!e.verdict) return false;
  return true;
}

int ConstantLedger::tight_count() const {
  int c = 0;
  for (const auto& e : entries) c += e.tight;
  return c;
}

RealQCoefficients real_q_coefficients(int n, Rng& rng) {
  Geometry g(GeometryKind{Kind::Real, n});
  RealQCoefficients c;
  // value only: ∇*∇ and the trace vanish on a trace-free value with no symmetric derivatives
  SymTensor s0 = rng.trace_free(n, 2);
  TensorJet t0(g, 2, 2);
  t0.value() = s0;
  t0 = canonicalize(t0);
  SymTensor q0 = q_apply(t0);
  size_t r = 0;
  while (s0[r].is_zero()) ++r;
  c.a_s = q0[r] / s0[r];
  // Q(g0) = (a_s + n a_tr) g0
  SymTensor qg = q_apply(parallel_jet(g, metric(n), 2));
  c.a_tr = (qg[0] - c.a_s) / Scalar(n);
  // the remainder on a random jet is a multiple of ∇*∇S
  TensorJet s = random_jet(g, 2, 2, rng);
  SymTensor rest = q_apply(s);
  rest.addmul(-c.a_s, s.value());
  rest.addmul(-c.a_tr, trace(s.value())[0] * metric(n));
  SymTensor lap = connection_laplacian(s).value();
  r = 0;
  while (r < lap.size() && lap[r].is_zero()) ++r;
  c.a_lap = r < lap.size() ? rest[r] / lap[r] : Scalar(0);
  SymTensor check = rest;
  check.addmul(-c.a_lap, lap);
  c.consistent = check.is_zero() && q0 == c.a_s * s0;
  return c;
}

ConstantLedger real_case_constants(int n) {
  RealQCoefficients q;
  q.a_s = Scalar(-1, 2);
  q.a_lap = Scalar(1, 4);
  q.a_tr = Scalar(1, 2);
  q.consistent = true;
  return real_case_constants(n, q);
}

ConstantLedger real_case_constants(int n, const RealQCoefficients& q) {
  if (n < 3) throw DomainError("the real-case constants need n >= 3");
  ConstantLedger l;
  l.kind = Kind::Real;
  l.n = n;
  // ⟨∇*∇S_0,S_0⟩ >= ⟨R°S_0 - S_0∘Ric, S_0⟩ = (1 - ric)|S_0|²
  Scalar weit = Scalar(1) - ricci_closed_form(Kind::Real, n);
  l.entries.push_back(entry("real.weitzenbock_factor", "1 - Ricci factor", weit, Scalar(n), "=="));
  Scalar cs = q.a_s + q.a_lap * weit;
  l.entries.push_back(entry("real.s0_coefficient", "a_s + a_lap * (n)", cs, Scalar(n - 2, 4), "=="));
  l.entries.push_back(entry("real.s0_positive", "(n-2)/4", cs, Scalar(0), ">"));
  // ⟨Q(hg0),hg0⟩ = n a_lap ⟨Δh,h⟩ + n (a_s + n a_tr) |h|²
  Scalar ch_lap = Scalar(n) * q.a_lap;
  l.entries.push_back(entry("real.h_laplacian", "n * a_lap", ch_lap, Scalar(n, 4), "=="));
  Scalar ch = Scalar(n) * (q.a_s + Scalar(n) * q.a_tr);
  l.entries.push_back(entry("real.h_coefficient", "n * (a_s + n a_tr)", ch, Scalar(n * (n - 1), 2), "=="));
  l.entries.push_back(entry("real.h_positive", "n(n-1)/2", ch, Scalar(0), ">"));
  l.entries.push_back(entry("real.q_coefficients", "probe of the Q formula", Scalar(q.consistent ? 1 : 0), Scalar(1), "=="));
  return l;
}

ConstantLedger complex_case_constants(int n) {
  if (n < 4) throw DomainError("the complex-case constants need n >= 4");
  ConstantLedger l;
  l.kind = Kind::Complex;
  l.n = n;
  Scalar l01 = lam(0, n) / lam(1, n), l21 = lam(2, n) / lam(1, n), l02 = lam(0, n) / lam(2, n);
  l.entries.push_back(entry("complex.lambda0_over_lambda1", "closed-form conformal factors", l01, Scalar(1, n), "=="));
  l.entries.push_back(entry("complex.lambda0_over_lambda2", "closed-form conformal factors", l02,
                            Scalar(1) / (Scalar(n) * Scalar(n + 2, 2)), "=="));
  // the coefficient that enters the ∇h bound is ½ Λ_2/Λ_1
  l.entries.push_back(entry("complex.half_lambda2_over_lambda1", "1/2 * Λ_2/Λ_1", Scalar(1, 2) * l21, Scalar(n + 2, 4), "=="));
  Scalar cs = Scalar(1) + Scalar(1, 8) * l02;
  l.entries.push_back(entry("complex.lower_s0", "1 + 1/8 Λ_0/Λ_2", cs, Scalar(97, 96), "<="));
  Scalar ch = Scalar(1, 2) * l21 + Scalar(3) * l01;
  l.entries.push_back(entry("complex.lower_h", "1/2 Λ_2/Λ_1 + 3 Λ_0/Λ_1", ch, Scalar(n + 5, 4), "<="));
  // W = Q_1 + Q_0/8: ¼ - (1/8)(97/96) = ¼ (1 - 97/192)
  Scalar ps = Scalar(4) * (Scalar(1, 4) - Scalar(1, 8) * Scalar(97, 96));
  l.entries.push_back(entry("complex.presquefini_s0", "4 * (1/4 - 1/8 * 97/96)", ps, Scalar(95, 192), "=="));
  Scalar ph = Scalar(1, 4) * (Scalar(n) - Scalar(n + 5, 8));
  l.entries.push_back(entry("complex.presquefini_h", "1/4 (n - (n+5)/8)", ph, Scalar(0), ">"));
  // Weitzenböck: ⟨∇*∇S_0,S_0⟩ >= (1 - ric)|S_0|² - 3⟨S_0∘J,S_0⟩ with 1 - ric = n+3
  Scalar weit = Scalar(1) - ricci_closed_form(Kind::Complex, n);
  Scalar w_s = Scalar(4) * Scalar(192) * (Scalar(1, 4) * ps * weit - Scalar(1, 2));
  Scalar w_j = Scalar(4) * Scalar(192) * (Scalar(1, 4) * ps * Scalar(-3) + Scalar(1, 2));
  l.entries.push_back(entry("complex.weitzenbock_s0", "768 (95/768 (n+3) - 1/2)", w_s, Scalar(95 * n - 99), "=="));
  l.entries.push_back(entry("complex.weitzenbock_j", "768 (-3 * 95/768 + 1/2)", w_j, Scalar(99), "=="));
  // |⟨S_0∘J,S_0⟩| <= |S_0|²
  Scalar co = w_s - w_j;
  l.entries.push_back(entry("complex.coercive_s0", "(95n - 99) - 99", co, Scalar(95 * n - 198), "=="));
  l.entries.push_back(entry("complex.coercive_s0_positive", "95n - 198", co, Scalar(0), ">"));
  Scalar fin = co / Scalar(768);
  l.entries.push_back(entry("complex.final_constant", "(95n - 198)/768", fin, Scalar(0), ">"));
  l.entries.push_back(entry("complex.h_constant", "n^2/2", Scalar(n * n, 2), Scalar(0), ">"));
  return l;
}

SymTensor q1_apply(const TensorJet& s) {
  const Geometry& g = s.geometry();
  if (g.tag() != Kind::Complex) throw DomainError("Q_1 is the complex-model operator");
  const SymTensor& v = s.value();
  SymTensor out = Scalar(1, 4) * connection_laplacian(s.truncated(2)).value();
  SymTensor inner_part = -v;
  inner_part.addmul(trace(v)[0], metric(g.n()));
  inner_part += compose(v, g.J(0));
  out.addmul(Scalar(1, 2), inner_part);
  return out;
}

ComplexIdentities complex_case_identities(const TensorJet& s) {
  const Geometry& g = s.geometry();
  if (g.tag() != Kind::Complex) throw DomainError("these identities are for the complex model");
  int n = g.n();
  ComplexIdentities r;
  JetFunction u = JetFunction::pullback(s);
  JetFunction f(g, s.order());
  f.add(u.omega(2));
  JetFunction f2 = v_eigenpart(f, 2, 0), f0 = v_eigenpart(f, 2, 1), fm2 = v_eigenpart(f, 2, 2);
  auto eta = [](const JetFunction& x, int e, int d) { return op_eta(x, e, d); };
  JetFunction a = eta(f2, 1, 1), b = eta(f0, 1, 1), c = eta(f2, 1, -1);
  JetFunction d = eta(f0, 1, -1), e = eta(fm2, 1, 1), gg = eta(fm2, 1, -1);
  auto parts3 = [](const JetFunction& x) {
    std::array<JetFunction, 4> p{v_eigenpart(x, 3, 0), v_eigenpart(x, 3, 1), v_eigenpart(x, 3, 2), v_eigenpart(x, 3, 3)};
    return p;
  };
  auto matches = [&](const JetFunction& x, const std::array<JetFunction, 4>& want) {
    auto p = parts3(x);
    for (int k = 0; k < 4; ++k)
      if (!(p[k] - want[k]).is_zero()) return false;
    // nothing outside Ω_3
    JetFunction rest = x - (p[0] + p[1] + p[2] + p[3]);
    return rest.is_zero();
  };
  JetFunction xf = op_x_plus(f);
  r.x_plus_f = matches(xf, {a, b + c, d + e, gg});
  JetFunction jf = op_j(f);
  JetFunction vv = op_v(op_v(f));
  r.jf_is_one_plus_half_v2 = (jf - f - Scalar(1, 2) * vv).is_zero();
  JetFunction xjf = op_x_plus(jf);
  r.x_plus_jf = matches(xjf, {Scalar(-1) * a, b - c, d - e, Scalar(-1) * gg});
  JetFunction hvf = op_h_plus(op_v(f));
  std::array<JetFunction, 4> disp{Scalar(-2) * a, Scalar(2) * c, Scalar(2) * e, Scalar(-2) * gg};
  r.h_plus_vf = matches(hvf, disp);
  r.h_plus_vf_flipped = matches(Scalar(-1) * hvf, disp);
  // -8p, grouped by eigenspace
  r.sum_components = matches(xjf + hvf, {a, b - Scalar(3) * c, d - Scalar(3) * e, gg});

  // ⟨Q_1 S,S⟩ = ¼⟨∇*∇S_0,S_0⟩ - ½|S_0|² + ½⟨S_0∘J,S_0⟩ + (n/4) h Δh + (n²/2) h²
  TensorJet s2 = s.truncated(2);
  TensorJet h = map_levels(s2, 0, [&](const SymTensor& x) { return Scalar(1, n) * trace(x); });
  TensorJet s0 = s2;
  s0.addmul(Scalar(-1), map_levels(h, 2, [&](const SymTensor& x) { return x[0] * metric(n); }));
  const SymTensor& sv = s0.value();
  Scalar hv = h.value()[0];
  Scalar lap_h = connection_laplacian(h).value()[0];
  Scalar lhs = inner_plain(q1_apply(s2), s2.value());
  Scalar rhs = Scalar(1, 4) * inner_plain(connection_laplacian(s0).value(), sv) - Scalar(1, 2) * inner_plain(sv, sv) +
               Scalar(1, 2) * inner_plain(compose(sv, g.J(0)), sv) + Scalar(n, 4) * hv * lap_h +
               Scalar(n * n, 2) * hv * hv;
  r.q1_pairing = lhs == rhs;

  JetFunction xm = op_x_minus(f) - op_x_minus(jf);
  r.x_minus_difference = (xm - Scalar(2) * (eta(f2, -1, -1) + eta(fm2, -1, 1))).is_zero();
  r.zero = eta(f2, -1, 1).is_zero() && eta(fm2, -1, -1).is_zero();
  return r;
}

CelleCheck celle_formal_check() {
  // symbols a..g = 0..5; eigenspace of each: a:3, b,c:1, d,e:-1, g:-3
  const std::array<int, 6> space{3, 1, 1, -1, -1, -3};
  using Vecf = std::array<Scalar, 6>;
  // ⟨x,y⟩ as coefficients of Gram symbols G[s][t], only for s,t in the same eigenspace
  using Form = std::map<std::pair<int, int>, Scalar>;
  auto pair_form = [&](const Vecf& x, const Vecf& y) {
    Form f;
    for (int s = 0; s < 6; ++s)
      for (int t = 0; t < 6; ++t)
        if (space[s] == space[t] && !(x[s] * y[t]).is_zero()) f[{s, t}] += x[s] * y[t];
    return f;
  };
  auto add = [](Form& f, const Form& o, const Scalar& w) {
    for (const auto& [k, v] : o) f[k] += w * v;
  };
  auto same = [](const Form& x, const Form& y) {
    Form d = x;
    for (const auto& [k, v] : y) d[k] -= v;
    for (const auto& [k, v] : d)
      if (!v.is_zero()) return false;
    return true;
  };
  auto unit = [](std::initializer_list<int> idx, std::initializer_list<int> w) {
    Vecf v{};
    auto it = w.begin();
    for (int i : idx) v[i] = Scalar(*it++);
    return v;
  };
  Vecf xf = unit({0, 1, 2, 3, 4, 5}, {1, 1, 1, 1, 1, 1});
  Vecf xjf = unit({0, 1, 2, 3, 4, 5}, {-1, 1, -1, 1, -1, -1});
  Vecf hvf_disp = unit({0, 2, 4, 5}, {-2, 2, 2, -2});
  Vecf hvf_eta = unit({0, 2, 4, 5}, {2, -2, -2, 2});
  auto lhs = [&](const Vecf& hvf) {
    Vecf v;
    for (int i = 0; i < 6; ++i) v[i] = xjf[i] + hvf[i];
    return pair_form(v, xf);
  };
  Vecf ea = unit({0}, {1}), ebc = unit({1, 2}, {1, 1}), ede = unit({3, 4}, {1, 1}), eg = unit({5}, {1});
  // -3|a|² + |b+c|² + |d+e|² - 3|g|²
  Form mid;
  add(mid, pair_form(ea, ea), Scalar(-3));
  add(mid, pair_form(ebc, ebc), Scalar(1));
  add(mid, pair_form(ede, ede), Scalar(1));
  add(mid, pair_form(eg, eg), Scalar(-3));
  // |X_+f|² - 4(|a|² + |g|²)
  Form rhs = pair_form(xf, xf);
  add(rhs, pair_form(ea, ea), Scalar(-4));
  add(rhs, pair_form(eg, eg), Scalar(-4));
  // |a|² + ⟨b-3c, b+c⟩ + ⟨d-3e, d+e⟩ + |g|²
  Form eta_closed;
  add(eta_closed, pair_form(ea, ea), Scalar(1));
  add(eta_closed, pair_form(unit({1, 2}, {1, -3}), ebc), Scalar(1));
  add(eta_closed, pair_form(unit({3, 4}, {1, -3}), ede), Scalar(1));
  add(eta_closed, pair_form(eg, eg), Scalar(1));
  CelleCheck c;
  c.displayed = same(lhs(hvf_disp), mid) && same(mid, rhs);
  c.eta_sign = same(lhs(hvf_eta), rhs);
  c.eta_sign_closed = same(lhs(hvf_eta), eta_closed);
  return c;
}

}  // namespace rk
