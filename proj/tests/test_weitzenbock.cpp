#include <doctest.h>

#include "rigiditykit/coercivity.hpp"
#include "rigiditykit/weitzenbock.hpp"

using namespace rk;

TEST_CASE("Weitzenböck identity with the stated sign") {
  Rng rng(1);
  for (GeometryKind gk : {GeometryKind{Kind::Real, 3}, GeometryKind{Kind::Real, 4}, GeometryKind{Kind::Complex, 4},
                          GeometryKind{Kind::Quaternion, 8}}) {
    Geometry g(gk);
    TensorJet s = random_jet(g, 2, 2, rng);
    CHECK(is_zero(weitzenbock_residual(s, 1)));
    CHECK_FALSE(is_zero(weitzenbock_residual(s, -1)));
  }
}

TEST_CASE("curvature term table") {
  Rng rng(2);
  for (GeometryKind gk : {GeometryKind{Kind::Real, 4}, GeometryKind{Kind::Complex, 4}, GeometryKind{Kind::Quaternion, 8},
                          GeometryKind{Kind::Octonion, 16}}) {
    Geometry g(gk);
    CurvatureRow r = curvature_term_row(g, rng);
    CHECK(r.passed());
    CHECK(r.ricci == ricci_closed_form(gk.tag, gk.n));
    CHECK(r.r_circ_g0 == r.ricci);  // R°(g0) = Ric in all four models
  }
  CHECK(ricci_closed_form(Kind::Octonion, 16) == Scalar(-36));
}

TEST_CASE("real-case constants") {
  Rng rng(3);
  for (int n : {3, 4, 5, 10}) {
    RealQCoefficients q = real_q_coefficients(n, rng);
    CHECK(q.consistent);
    CHECK(q.a_s == Scalar(-1, 2));
    CHECK(q.a_lap == Scalar(1, 4));
    CHECK(q.a_tr == Scalar(1, 2));
    CHECK(real_case_constants(n, q).all_pass());
  }
}

TEST_CASE("complex-case ledger") {
  for (int n = 4; n <= 64; n += 2) {
    ConstantLedger l = complex_case_constants(n);
    CHECK(l.all_pass());
    CHECK(l.tight_count() == (n == 4 ? 2 : 0));
    for (const LedgerEntry& e : l.entries) {
      if (e.name == "complex.final_constant") CHECK(e.value == Scalar(95 * n - 198, 768));
      if (e.name == "complex.presquefini_s0") CHECK(e.value == Scalar(95, 192));
    }
  }
}

TEST_CASE("complex-case pointwise identities") {
  Geometry g(GeometryKind{Kind::Complex, 4});
  Rng rng(4);
  ComplexIdentities id = complex_case_identities(solenoidal_jet(g, 2, rng));
  CHECK(id.x_plus_f);
  CHECK(id.x_plus_jf);
  CHECK(id.h_plus_vf_flipped);
  CHECK_FALSE(id.h_plus_vf);
  CHECK(id.jf_is_one_plus_half_v2);
  CHECK(id.sum_components);
  CHECK(id.q1_pairing);
  CHECK(id.x_minus_difference);
  CHECK(id.zero);
  CelleCheck c = celle_formal_check();
  CHECK(c.displayed);
  CHECK(c.eta_sign_closed);
}
