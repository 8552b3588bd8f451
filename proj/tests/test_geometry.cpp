#include <doctest.h>

#include "oracles.hpp"
#include "rigiditykit/weitzenbock.hpp"

using namespace rk;

namespace {

std::vector<GeometryKind> models() {
  return {{Kind::Real, 3}, {Kind::Real, 4}, {Kind::Complex, 4}, {Kind::Complex, 6}, {Kind::Quaternion, 8}, {Kind::Octonion, 16}};
}

Vec ev(int n, int i) { return basis_vec(n, i); }

}  // namespace

TEST_CASE("admissible dimensions") {
  CHECK(admissible({Kind::Real, 3}));
  CHECK_FALSE(admissible({Kind::Real, 2}));
  CHECK(admissible({Kind::Complex, 4}));
  CHECK_FALSE(admissible({Kind::Complex, 5}));
  CHECK_FALSE(admissible({Kind::Quaternion, 4}));
  CHECK(admissible({Kind::Quaternion, 12}));
  CHECK(admissible({Kind::Octonion, 16}));
  CHECK_FALSE(admissible({Kind::Octonion, 8}));
  CHECK_THROWS_AS(Geometry(GeometryKind{Kind::Complex, 5}), DomainError);
  CHECK_THROWS_AS(parse_kind("hyperbolic"), DomainError);
}

TEST_CASE("complex structures") {
  for (GeometryKind gk : models()) {
    if (gk.tag == Kind::Octonion) continue;  // j_ops holds the O² coordinate map there
    Geometry g(gk);
    int n = gk.n;
    CHECK(static_cast<int>(g.j_ops().size()) == g.num_j());
    for (const Mat& j : g.j_ops()) {
      CHECK(j * j == Scalar(-1) * Mat::identity(n));
      CHECK(j.transpose() == Scalar(-1) * j);
    }
    if (gk.tag == Kind::Quaternion) CHECK(g.J(0) * g.J(1) == g.J(2));
  }
}

TEST_CASE("curvature against the closed forms") {
  Rng rng(1);
  for (GeometryKind gk : models()) {
    if (gk.tag == Kind::Octonion) continue;
    Geometry g(gk);
    for (int i = 0; i < 5; ++i) {
      Vec x = rng.vector(gk.n), y = rng.vector(gk.n), z = rng.vector(gk.n);
      CHECK(g.curvature(x, y, z) == oracle::curvature(g, x, y, z));
    }
  }
}

TEST_CASE("curvature symmetries and the adapted frame") {
  Rng rng(2);
  for (GeometryKind gk : models()) {
    Geometry g(gk);
    int n = gk.n;
    Vec x = rng.vector(n), y = rng.vector(n), z = rng.vector(n), w = rng.vector(n);
    CHECK(g.curvature(x, y, z) == scaled(Scalar(-1), g.curvature(y, x, z)));
    Vec bianchi = axpy(Scalar(1), g.curvature(x, y, z), axpy(Scalar(1), g.curvature(y, z, x), g.curvature(z, x, y)));
    CHECK(is_zero(bianchi));
    CHECK(dot(g.curvature(x, y, z), w) == dot(g.curvature(z, w, x), y));

    Vec v = rng.unit_vector(n);
    AdaptedFrame fr = g.adapted_frame(v);
    REQUIRE(static_cast<int>(fr.y.size()) == n);
    int fours = 0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) CHECK(dot(fr.y[j], fr.y[k]) == Scalar(j == k ? 1 : 0));
      Scalar l2(fr.lambda[j] * fr.lambda[j]);
      CHECK(g.curvature(fr.y[j], v, v) == scaled(l2, fr.y[j]));
      fours += fr.lambda[j] == 2;
    }
    CHECK(fours == structure_rank(gk.tag) - 1);
  }
}

TEST_CASE("Ricci factors and R°(g0)") {
  for (GeometryKind gk : models()) {
    Geometry g(gk);
    int n = gk.n;
    // Ric(X) = -Σ R(X,e_i)e_i, summed by hand
    Vec ric(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ric = axpy(Scalar(-1), g.curvature(ev(n, 0), ev(n, i), ev(n, i)), ric);
    Scalar want = gk.tag == Kind::Real ? Scalar(-(n - 1))
                  : gk.tag == Kind::Complex ? Scalar(-(n + 2))
                  : gk.tag == Kind::Quaternion ? Scalar(-(n + 8))
                                               : Scalar(-36);
    CHECK(ric == scaled(want, ev(n, 0)));
    CHECK(Scalar(g.ricci_factor()) == want);
    CHECK(ricci_closed_form(gk.tag, n) == want);
    CHECK(g.r_circ(metric(n)) == want * metric(n));
  }
}

TEST_CASE("octonion algebra") {
  Rng rng(3);
  auto rnd = [&] {
    Octonion o;
    for (auto& c : o.c) c = rng.rational();
    return o;
  };
  for (int i = 0; i < 10; ++i) {
    Octonion a = rnd(), b = rnd();
    CHECK((a * b).norm2() == a.norm2() * b.norm2());
    CHECK((a * b).conj() == b.conj() * a.conj());
    CHECK((a * (a * b)) == ((a * a) * b));  // alternative
  }
  CHECK(Octonion::unit(1) * Octonion::unit(2) == Octonion::unit(4));
  // not associative
  Octonion e1 = Octonion::unit(1), e2 = Octonion::unit(2), e3 = Octonion::unit(3);
  CHECK_FALSE((e1 * e2) * e3 == e1 * (e2 * e3));
}

TEST_CASE("Cayley lines span the curvature -4 block") {
  Geometry g(GeometryKind{Kind::Octonion, 16});
  Rng rng(4);
  Vec v = rng.unit_vector(16);
  std::vector<Vec> line = g.cayley_frame(v);
  REQUIRE(line.size() == 8);
  for (size_t j = 0; j < line.size(); ++j) {
    for (size_t k = 0; k < line.size(); ++k) CHECK(dot(line[j], line[k]) == Scalar(j == k ? 1 : 0));
    Scalar c = dot(line[j], v);
    Vec perp = axpy(-c, v, line[j]);
    CHECK(g.curvature(perp, v, v) == scaled(Scalar(4), perp));
  }
}
