#include <doctest.h>

#include "rigiditykit/suites.hpp"

using namespace rk;

TEST_CASE("real symbol is a quarter of |ξ|²") {
  Geometry g(GeometryKind{Kind::Real, 4});
  Vec xi{Scalar(1), Scalar(2), Scalar(0), Scalar(-1)};
  CHECK(symbol_form(g, xi) == scalar_tensor(4, Scalar(6, 4)));
  Rng rng(1);
  SymTensor s = rng.sym_tensor(4, 2);
  CHECK(assemble_symbol(g, xi).apply(s) == symbol_from_jet(g, xi, s));
}

TEST_CASE("symbol routes agree") {
  Rng rng(2);
  for (GeometryKind gk : {GeometryKind{Kind::Complex, 4}, GeometryKind{Kind::Quaternion, 8}}) {
    Geometry g(gk);
    for (const Vec& xi : xi_samples(gk.n, 3, rng)) {
      SymTensor s = rng.sym_tensor(gk.n, 2);
      SymTensor a = assemble_symbol(g, xi).apply(s);
      CHECK(a == symbol_displayed(g, xi, s));
      CHECK(a == symbol_from_jet(g, xi, s));
    }
  }
}

TEST_CASE("fast injectivity route against the kernel basis") {
  Rng rng(3);
  for (GeometryKind gk : {GeometryKind{Kind::Real, 3}, GeometryKind{Kind::Complex, 4}, GeometryKind{Kind::Complex, 6}}) {
    Geometry g(gk);
    for (const Vec& xi : xi_samples(gk.n, 4, rng)) {
      InjectivityResult fast = solenoidal_injectivity(g, xi), slow = solenoidal_injectivity(g, xi, true);
      CHECK(fast.dim_kernel == slow.dim_kernel);
      CHECK(fast.rank == slow.rank);
      CHECK(fast.injective());
      CHECK(slow.dim_kernel == gk.n * (gk.n - 1) / 2);
    }
  }
}

TEST_CASE("ι_ξ L identity and kernel basis") {
  Rng rng(4);
  Vec xi = rng.vector(5);
  for (int p = 0; p <= 3; ++p) CHECK(iota_l_residual(rng.sym_tensor(5, p), xi).is_zero());
  for (const SymTensor& k : kernel_iota(5, xi)) CHECK(contract_vec(k, xi).is_zero());
}

TEST_CASE("scalar bounds") {
  Geometry c(GeometryKind{Kind::Complex, 4});
  Vec xi{Scalar(1), Scalar(0), Scalar(0), Scalar(0)};
  // v = e_1, Jv = ±e_2 or so: ξ(Jv) = 0 and the factor is |ξ|² = 1
  for (int i = 0; i < 4; ++i) {
    ScalarBound b = scalar_bound(c, xi, basis_vec(4, i));
    CHECK(b.holds());
    CHECK(b.bound == Scalar(1, 2));
    CHECK(b.certificate == b.value - b.bound);
  }
  for (const Vec& x : sign_grid(4, 2))
    for (int i = 0; i < 4; ++i) CHECK(scalar_bound(c, x, basis_vec(4, i)).holds());
  CHECK(sign_grid(3, 1).size() == 6);
  CHECK(sign_grid(3, 3).size() == 26);
}
