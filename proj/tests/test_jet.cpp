#include <doctest.h>

#include "oracles.hpp"
#include "rigiditykit/identities.hpp"

using namespace rk;

TEST_CASE("random jets are in Ricci canonical form") {
  Geometry g(GeometryKind{Kind::Complex, 4});
  Rng rng(1);
  for (int m = 0; m <= 2; ++m) {
    TensorJet t = random_jet(g, m, 3, rng);
    CHECK(is_canonical(t));
    CHECK(canonicalize(t) == t);
    // ∇²_{a,b} - ∇²_{b,a} is the curvature action on the value
    if (m == 2) {
      SymTensor d = t.at({0, 1}) - t.at({1, 0});
      CHECK(d == swap_defect(t, {0, 1}, 0));
      CHECK_FALSE(d.is_zero());
    }
  }
}

TEST_CASE("rough Laplacian against level 2") {
  Rng rng(2);
  for (GeometryKind gk : {GeometryKind{Kind::Real, 3}, GeometryKind{Kind::Quaternion, 8}}) {
    Geometry g(gk);
    TensorJet t = random_jet(g, 2, 2, rng);
    CHECK(connection_laplacian(t).value() == oracle::rough_laplacian(t));
  }
}

TEST_CASE("X on pullbacks is the symmetrised derivative") {
  Rng rng(3);
  Geometry g(GeometryKind{Kind::Complex, 4});
  for (int m = 0; m <= 3; ++m) {
    TensorJet t = random_jet(g, m, 1, rng);
    CHECK(x_and_d_residual(t, rng.unit_vector(4)).is_zero());
  }
}

TEST_CASE("commutator identities on the complex model") {
  Rng rng(4);
  for (int n : {4, 6}) {
    Geometry g(GeometryKind{Kind::Complex, n});
    for (int m = 0; m <= 2; ++m) {
      JetFunction u = JetFunction::pullback(random_jet(g, m, 2, rng));
      CommutatorResiduals r = commutator_residuals(u);
      CHECK(r.xv.is_zero());
      CHECK(r.vh.is_zero());
      CHECK(r.hx.is_zero());
      CHECK(r.comm2.is_zero());
      CHECK(r.comm3.is_zero());
      CHECK(r.pestov.is_zero());
      CHECK(r.h_conj.is_zero());
      // sign sanity: the same combinations with a flipped term do not vanish
      if (m > 0) {
        CHECK_FALSE((op_x(op_v(u)) - op_v(op_x(u)) + op_h(u)).is_zero());
        CHECK_FALSE((op_h(op_x(u)) - op_x(op_h(u)) - Scalar(4) * op_v(u)).is_zero());
      }
    }
  }
}

TEST_CASE("commutators need a second-order jet") {
  Geometry g(GeometryKind{Kind::Complex, 4});
  Rng rng(5);
  JetFunction u = JetFunction::pullback(random_jet(g, 1, 1, rng));
  CHECK_THROWS(commutator_residuals(u));
}

TEST_CASE("horizontal Laplacian of a pulled back 2-tensor") {
  Rng rng(6);
  for (GeometryKind gk : {GeometryKind{Kind::Real, 4}, GeometryKind{Kind::Complex, 4}, GeometryKind{Kind::Quaternion, 8}}) {
    Geometry g(gk);
    CHECK(delta_h_residual(random_jet(g, 2, 2, rng)).is_zero());
  }
}

TEST_CASE("η raises and lowers V-eigenvalues") {
  Geometry g(GeometryKind{Kind::Complex, 4});
  Rng rng(7);
  for (int m = 0; m <= 2; ++m)
    for (int k = 0; k <= m; ++k) {
      JetFunction e = v_eigenpart(JetFunction::pullback(random_jet(g, m, 1, rng, true)), m, k);
      for (int eps : {1, -1})
        for (int d : {1, -1}) CHECK(eta_mapping_ok(e, m, k, eps, d));
    }
}
