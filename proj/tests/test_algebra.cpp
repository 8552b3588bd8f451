#include <doctest.h>

#include "oracles.hpp"
#include "rigiditykit/rng.hpp"

using namespace rk;

namespace {

// brute-force ⟨S,T⟩ = (1/m!) Σ over every index tuple
Scalar inner_by_tuples(const SymTensor& s, const SymTensor& t) {
  int n = s.dim(), m = s.degree();
  std::vector<int> idx(static_cast<size_t>(m), 0);
  Scalar sum;
  while (true) {
    sum += s.get(idx) * t.get(idx).conj();
    int k = m - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) break;
  }
  mpz_class f = factorial(m);
  return sum / Scalar(mpq_class(f));
}

SymTensor trace_by_loop(const SymTensor& s) {
  int n = s.dim(), m = s.degree();
  SymTensor out(n, m - 2);
  const IndexSet& ix = out.indices();
  for (size_t r = 0; r < ix.count; ++r) {
    std::vector<int> t(ix.at(r), ix.at(r) + (m - 2));
    Scalar v;
    for (int i = 0; i < n; ++i) {
      std::vector<int> u = t;
      u.push_back(i);
      u.push_back(i);
      v += s.get(u);
    }
    out[r] = v;
  }
  return out;
}

}  // namespace

TEST_CASE("scalar arithmetic and text form") {
  Scalar a(1, 2), b(Scalar(-1, 3) + Scalar(mpq_class(0), mpq_class(2)));
  CHECK((a + a) == Scalar(1));
  CHECK((Scalar::I() * Scalar::I()) == Scalar(-1));
  CHECK(a.str() == "1/2");
  CHECK(Scalar(3).str() == "3/1");
  CHECK(b.str() == "-1/3+2/1i");
  CHECK(Scalar(mpq_class(1), mpq_class(-1, 3)).str() == "1/1+-1/3i");
  for (const Scalar& x : {a, b, Scalar(mpq_class(1), mpq_class(-1, 3)), Scalar(0), Scalar(-7, 5)})
    CHECK(Scalar::parse(x.str()) == x);
  CHECK(Scalar::parse("-2/4") == Scalar(-1, 2));
  CHECK(Scalar::parse("3") == Scalar(3));
  CHECK((b / b) == Scalar(1));
}

TEST_CASE("malformed rationals are parse errors") {
  CHECK_THROWS_AS(Scalar::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("1/"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("x"), ParseError);
  try {
    Scalar::parse("1/0", 3, 7);
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col == 7);
  }
}

TEST_CASE("multi-index ranking is a bijection") {
  for (int n : {1, 3, 5})
    for (int m = 0; m <= 4; ++m) {
      const IndexSet& ix = index_set(n, m);
      CHECK(ix.count == sym_dim(n, m));
      for (size_t r = 0; r < ix.count; ++r) CHECK(rank_sorted(ix.at(r), m) == r);
    }
}

TEST_CASE("trace, L and the inner product against index loops") {
  Rng rng(11);
  for (int n : {3, 4, 6})
    for (int m = 0; m <= 4; ++m) {
      SymTensor s = rng.sym_tensor(n, m), t = rng.sym_tensor(n, m);
      CHECK(inner(s, t) == inner_by_tuples(s, t));
      if (m >= 2) CHECK(trace(s) == trace_by_loop(s));
      if (m <= 2) {
        SymTensor l = oracle::symmetrize(n, m + 2, [&](const std::vector<int>& u) {
          return u[0] == u[1] ? s.get(std::span<const int>(u.data() + 2, m)) : Scalar(0);
        });
        CHECK(l_raise(s) == l);
      }
    }
}

TEST_CASE("trace decomposition round trip") {
  Rng rng(3);
  for (int n : {3, 4, 6, 8})
    for (int m = 0; m <= 4; ++m)
      for (int i = 0; i < 5; ++i) {
        SymTensor s = rng.sym_tensor(n, m);
        TraceDecomposition d = trace_decompose(s);
        REQUIRE(d.parts.size() == static_cast<size_t>(m / 2 + 1));
        for (const SymTensor& p : d.parts)
          if (p.degree() >= 2) CHECK(trace_by_loop(p).is_zero());
        CHECK(reassemble(d) == s);
      }
}

TEST_CASE("tr L(h) coefficients") {
  Rng rng(4);
  for (int n : {3, 5})
    for (int p = 0; p <= 3; ++p) {
      SymTensor h = rng.sym_tensor(n, p);
      SymTensor want = trace_l_c1(n, p) * h;
      if (p >= 2) want.addmul(trace_l_c2(p), l_raise(trace_by_loop(h)));
      CHECK(trace_by_loop(l_raise(h)) == want);
    }
  // tr L(g0) = ((n+2)/3) g0
  for (int n : {4, 16}) CHECK(trace(l_raise(metric(n))) == Scalar(n + 2, 3) * metric(n));
}

TEST_CASE("exact rank and kernel") {
  Mat m(3, 4);
  int v[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = v[i][j];
  CHECK(exact_rank(m) == 2);
  CHECK(certified_rank(m) == 2);
  std::vector<Vec> k = kernel(m);
  CHECK(k.size() == 2);
  for (const Vec& x : k) CHECK(is_zero(m * x));
  Mat c(2, 2);
  c(0, 0) = Scalar::I();
  c(0, 1) = 1;
  c(1, 0) = -1;
  c(1, 1) = Scalar::I();
  CHECK(exact_rank(c) == 1);  // second row is i times the first
}
