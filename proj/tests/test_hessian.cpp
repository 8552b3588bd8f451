#include <doctest.h>

#include "oracles.hpp"
#include "rigiditykit/hessian.hpp"

using namespace rk;

TEST_CASE("Q against the index-loop oracle") {
  Rng rng(1);
  for (GeometryKind gk : {GeometryKind{Kind::Real, 3}, GeometryKind{Kind::Real, 5}, GeometryKind{Kind::Complex, 4},
                          GeometryKind{Kind::Complex, 6}, GeometryKind{Kind::Quaternion, 8}}) {
    Geometry g(gk);
    for (int i = 0; i < 3; ++i) {
      TensorJet t = random_jet(g, 2, 2, rng);
      SymTensor q = q_apply(t);
      CHECK(q.degree() == m_g0(gk.tag));
      CHECK(q == oracle::q(t));
    }
  }
}

TEST_CASE("octonion Q against the oracle, and the two forms") {
  Geometry g(GeometryKind{Kind::Octonion, 16});
  Rng rng(2);
  TensorJet t = random_jet(g, 2, 2, rng);
  CHECK(q_apply(t) == oracle::q(t));
  // the frame sum replaces 1/6 S by -1/3 S inside L
  CHECK(q_apply(t) - q_apply(t, QForm::FrameDerived) == Scalar(1, 2) * l_raise(t.value()));
}

TEST_CASE("Q of the metric") {
  for (int n : {3, 4, 7}) {
    Geometry g(GeometryKind{Kind::Real, n});
    CHECK(q_apply(parallel_jet(g, metric(n), 2)) == Scalar(n - 1, 2) * metric(n));
  }
  for (int n : {4, 6}) {
    Geometry g(GeometryKind{Kind::Complex, n});
    CHECK(q_apply(parallel_jet(g, metric(n), 2)) == Scalar(n, 2) * l_raise(metric(n)));
  }
}

TEST_CASE("frame sum equals Q plus dropped X-derivatives") {
  Rng rng(3);
  for (GeometryKind gk : {GeometryKind{Kind::Real, 4}, GeometryKind{Kind::Complex, 4}, GeometryKind{Kind::Quaternion, 8}}) {
    Geometry g(gk);
    TensorJet t = random_jet(g, 2, 2, rng);
    Vec v = rng.unit_vector(gk.n);
    VofS r = v_of_s(t, v);
    CHECK(r.value == r.q_value + r.dropped);
    CHECK(r.s_term == r.s_term_closed);
    AdaptedFrame fr = g.adapted_frame(v);
    for (int j = 0; j < gk.n; ++j) {
      CHECK(ricci_rearrange_residual(t, fr, j).is_zero());
      CHECK(ricci_rearrange_zeroth(g, t.value(), fr, j).is_zero());
    }
  }
}

TEST_CASE("quaternionic Q does not depend on the J basis") {
  Geometry g(GeometryKind{Kind::Quaternion, 8});
  Rng rng(4);
  TensorJet t = random_jet(g, 2, 2, rng);
  Geometry rot(GeometryKind{Kind::Quaternion, 8}, rng.rotation3());
  CHECK_FALSE(rot.J(0) == g.J(0));
  CHECK(q_apply(rebind(t, rot)) == q_apply(t));
}

TEST_CASE("averaging identities") {
  Rng rng(5);
  for (int n : {3, 4, 6}) {
    Geometry g(GeometryKind{Kind::Real, n});
    AveragePairing a = average_pairing(random_jet(g, 2, 2, rng));
    CHECK(a.residual().is_zero());
    CHECK(a.volume_coeff == Scalar(n - 1, 2));
  }
  Geometry c(GeometryKind{Kind::Complex, 4});
  for (int p = 0; p <= 2; ++p) CHECK(dstar_l_residual(random_jet(c, p, 1, rng)).is_zero());
  CHECK(dstar_l_coeffs(2) == std::pair<Scalar, Scalar>{Scalar(1, 2), Scalar(-1, 2)});
  CHECK(d_star(parallel_jet(c, l_raise(metric(4)), 1)).value().is_zero());
}

TEST_CASE("complex W(S) on solenoidal jets") {
  Geometry g(GeometryKind{Kind::Complex, 4});
  Rng rng(6);
  TensorJet s = solenoidal_jet(g, 2, rng);
  CHECK(d_star(s).is_zero());
  WResult w = w_of_s(s);
  // the assembly closes exactly up to the unused E_4^0 equation
  CHECK(w.residual_is_obstruction);
  WResult w0 = w_of_s(parallel_jet(g, metric(4), 2));
  CHECK(w0.residual.is_zero());
  CHECK(w0.p.is_zero());
}
