// acceptance run: one line per criterion, exit status 1 if any criterion fails
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "rigiditykit/suites.hpp"

using namespace rk;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SuiteReport run(const std::string& suite, Kind k, int n, int samples = 0) {
  SuiteOptions o;
  o.suite = suite;
  o.geometry = {k, n};
  o.seed = 2024;
  o.samples = samples;
  return run_suite(o);
}

const Check* find(const SuiteReport& r, const std::string& identity) {
  std::string id = check_id("", identity, r.kind, r.n);
  // ids are module.identity.kind.n; match on the part after the module
  for (const Check& c : r.checks)
    if (c.id.size() > id.size() && c.id.compare(c.id.size() - id.size(), id.size(), id) == 0 &&
        c.id[c.id.size() - id.size()] == '.')
      return &c;
  return nullptr;
}

bool passes(const SuiteReport& r, const std::string& identity) {
  const Check* c = find(r, identity);
  return c && c->pass;
}

struct Line {
  bool pass = true;
  std::ostringstream note;
  void need(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) note << "; ";
      else note.str("");
      note << what;
      pass = false;
    }
  }
};

int failed = 0;

void report(int id, Line& l, const std::string& summary, double secs) {
  if (!l.pass) ++failed;
  std::string note = l.note.str();
  std::printf("criterion %2d: %s  %s%s%s (%.1fs)\n", id, l.pass ? "PASS" : "FAIL", summary.c_str(),
              note.empty() ? "" : " -- ", note.c_str(), secs);
  std::fflush(stdout);
}

std::string kn(Kind k, int n) { return kind_name(k) + " n=" + std::to_string(n); }

}  // namespace

int main() {
  const std::vector<std::pair<Kind, int>> all{{Kind::Real, 4}, {Kind::Complex, 4}, {Kind::Quaternion, 8}, {Kind::Octonion, 16}};

  {
    auto t0 = Clock::now();
    Line l;
    std::string table;
    for (int n : {3, 4, 6, 8}) {
      SuiteReport r = run("tensor", Kind::Real, n, 100);
      for (int m = 0; m <= 4; ++m) {
        l.need(passes(r, "trace_decompose_m" + std::to_string(m)), "decompose m=" + std::to_string(m) + " n=" + std::to_string(n));
        l.need(passes(r, "reassemble_m" + std::to_string(m)), "reassemble m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
      const Check* c = find(r, "l_trace_adjoint");
      l.need(c && c->pass, "L-tr constant table n=" + std::to_string(n));
      if (c && n == 4) table = c->detail["c_by_degree_of_h"].dump();
    }
    double s = since(t0);
    l.need(s < 60, "runtime over one minute");
    if (l.pass) l.note << "n=4 L-tr constants " << table;
    report(1, l, "trace decomposition round trips, m <= 4, n in {3,4,6,8}, 100 tensors each", s);
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (int n : {4, 6, 8}) {
      SuiteReport r = run("conformal", Kind::Complex, n, 2);
      l.need(passes(r, "lambda0_over_lambda1"), "Λ0/Λ1 n=" + std::to_string(n));
      l.need(passes(r, "lambda0_over_lambda2"), "Λ0/Λ2 n=" + std::to_string(n));
      const Check* c = find(r, "lambda2_over_lambda1");
      if (c && !c->pass)
        l.need(false, "n=" + std::to_string(n) + ": Λ2/Λ1 = " + c->detail["value"].get<std::string>() + ", quoted (n+2)/4 = " +
                          c->detail["claimed"].get<std::string>());
    }
    if (!l.pass) l.note << "; the other two quoted ratios force Λ2/Λ1 = (n+2)/2, so the three cannot all hold";
    report(2, l, "quoted conformal ratios, n in {4,6,8}", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (int n : {4, 6}) {
      SuiteReport r = run("spectrum", Kind::Complex, n, 100);
      for (int m = 0; m <= 3; ++m) l.need(passes(r, "v_spectrum_m" + std::to_string(m)), "spectrum m=" + std::to_string(m));
      l.need(passes(r, "v_projectors"), "eigenprojectors n=" + std::to_string(n));
      l.need(passes(r, "jandv"), "T∘J = T + ½V²T n=" + std::to_string(n));
      l.need(passes(r, "eqtriple"), "V³ relation n=" + std::to_string(n));
    }
    report(3, l, "V spectrum m <= 3 and the Ω2/Ω3 relations, complex n in {4,6}, 100 samples", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (int n : {4, 6}) {
      SuiteReport r = run("commutators", Kind::Complex, n, 50);
      for (const char* id : {"comm_xv", "comm_vh", "comm_hx", "comm2", "comm3", "new_pestov"})
        l.need(passes(r, id), std::string(id) + " n=" + std::to_string(n));
    }
    double s = since(t0);
    l.need(s < 300, "runtime over five minutes");
    report(4, l, "commutator identities and the Pestov rearrangement, 50 order-2 jets, complex n in {4,6}", s);
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (auto [k, n] : all) l.need(passes(run("deltah", k, n, 50), "delta_h"), kn(k, n));
    report(5, l, "Δ_H^tot on pulled back 2-tensors, 50 order-2 jets, all four models", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (auto [k, n] : std::vector<std::pair<Kind, int>>{{Kind::Real, 4}, {Kind::Real, 8}, {Kind::Complex, 4}, {Kind::Complex, 8}, {Kind::Quaternion, 8}}) {
      SuiteReport r = run("weitzenbock", k, n, 50);
      l.need(passes(r, "identity"), "identity " + kn(k, n));
      for (const char* id : {"ricci_factor", "r_circ_g0", "r_circ_fiber", "s_ric", "pairing_closed", "r_circ_closed"})
        l.need(passes(r, id), std::string(id) + " " + kn(k, n));
    }
    SuiteReport o = run("weitzenbock", Kind::Octonion, 16);
    for (const char* id : {"ricci_factor", "r_circ_g0", "r_circ_fiber", "s_ric", "pairing_closed"})
      l.need(passes(o, id), std::string(id) + " octonion");
    report(6, l, "Weitzenböck identity, 50 jets, real/complex/quaternion n in {4,8}; curvature tables incl. R°(g0) = -36 g0", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (auto [k, n] : all) {
      Geometry g(GeometryKind{k, n});
      int bad = 0;
      for (int i = 0; i < 50; ++i) {
        Rng rng = sample_rng(2024, "acceptance.q", i);
        TensorJet t = random_jet(g, 2, 2, rng);
        if (q_apply(t) != oracle::q(t)) ++bad;
      }
      l.need(bad == 0, "oracle mismatch on " + std::to_string(bad) + " jets, " + kn(k, n));
      SuiteReport r = run("hessian", k, n);
      l.need(passes(r, "ricci_rearrange"), "Ricci rearrangement " + kn(k, n));
      if (k == Kind::Real || k == Kind::Complex) l.need(passes(r, "q_of_g0"), "Q(g0) " + kn(k, n));
      if (k == Kind::Quaternion) l.need(passes(r, "j_basis_invariance"), "J-basis invariance");
    }
    report(7, l, "Q against the naive oracle, 50 jets per model; Q(g0); J-basis invariance; Ricci rearrangement", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (auto [k, n] : all) {
      SuiteReport r = run("averaging", k, n);
      l.need(passes(r, "dstar_l_g0"), "D*L(g0) " + kn(k, n));
      if (k == Kind::Real) l.need(passes(r, "average_coefficient"), "<Q(S),g0> coefficient");
      if (k == Kind::Octonion) {
        const Check* c = find(r, "r_circ_l_g0");
        if (c && !c->pass)
          l.need(false, "octonion Sym R°(L(g0)) = " + c->detail["value"].get<std::string>() +
                            " L(g0), not -36 (R°(g0) itself is -36 g0)");
        else
          l.need(c != nullptr, "octonion R°(L(g0)) check missing");
      }
    }
    report(8, l, "D*L(g0) = 0, real averaging coefficient (n-1)/2, octonion R°(L(g0))", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (auto [k, n] : all) {
      SuiteReport r = run("symbol", k, n, 100);
      const Check* c = find(r, "solenoidal_injectivity");
      l.need(c && c->pass && c->witness.is_array() && c->witness.size() == 100, "injectivity " + kn(k, n));
      if (k != Kind::Real) l.need(passes(r, "scalar_bound"), "scalar bound " + kn(k, n));
    }
    report(9, l, "solenoidal symbol injective by exact rank, 100 ξ per model; scalar bounds on the sign grid", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (int n = 4; n <= 64; n += 2) {
      SuiteReport r = run("constants", Kind::Complex, n);
      l.need(r.all_pass(), "complex ledger n=" + std::to_string(n));
      if (n == 4) {
        l.need(passes(r, "tightness"), "n = 4 tightness");
        l.need(passes(r, "lower_s0") && find(r, "lower_s0")->detail["tight"] == true, "97/96 not tight");
        l.need(passes(r, "lower_h") && find(r, "lower_h")->detail["tight"] == true, "(n+5)/4 not tight");
      }
      l.need(passes(r, "final_constant"), "(95n-198)/768 n=" + std::to_string(n));
    }
    for (int n = 3; n <= 64; ++n) l.need(run("constants", Kind::Real, n).all_pass(), "real constants n=" + std::to_string(n));
    report(10, l, "constant ledger n in 4..64, tight entries at n = 4, real constants n in 3..64", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    SuiteReport r = run("wsolve", Kind::Complex, 4, 50);
    l.need(passes(r, "eq_zero"), "η relations (zero)");
    if (!passes(r, "w_assembly")) {
      l.need(false, "Q(S) - L(W(S)) - Dp is nonzero on every sample");
      if (passes(r, "w_residual_is_obstruction"))
        l.note << "; it equals the E_4^0 equation's defect, which the construction of p never imposes";
    }
    report(11, l, "complex W(S) assembly on 50 solenoidal jets, n = 4", since(t0));
  }

  {
    auto t0 = Clock::now();
    Line l;
    for (auto [suite, k, n] : std::vector<std::tuple<std::string, Kind, int>>{
             {"tensor", Kind::Real, 4}, {"commutators", Kind::Complex, 4}, {"symbol", Kind::Quaternion, 8}, {"hessian", Kind::Octonion, 16}}) {
      std::string a = run(suite, k, n, 3).to_json().dump(2), b = run(suite, k, n, 3).to_json().dump(2);
      l.need(a == b, suite + " report differs between runs");
    }
    report(12, l, "same seed, byte-identical reports", since(t0));
  }

  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
