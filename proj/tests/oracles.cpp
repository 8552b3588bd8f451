#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

using rk::Geometry;
using rk::Kind;
using rk::TensorJet;

SymTensor symmetrize(int n, int k, const Entry& f) {
  SymTensor out(n, k);
  const rk::IndexSet& ix = out.indices();
  for (size_t r = 0; r < ix.count; ++r) {
    std::vector<int> t(ix.at(r), ix.at(r) + k);
    Scalar sum;
    int count = 0;
    std::vector<int> p(static_cast<size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    do {
      std::vector<int> u(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) u[i] = t[p[i]];
      sum += f(u);
      ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    out[r] = sum / Scalar(count);
  }
  return out;
}

namespace {

Scalar ip(const Vec& a, const Vec& b) {
  Scalar s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec mat_vec(const rk::Mat& m, const Vec& v) {
  Vec out(v.size());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
  return out;
}

void add_to(Vec& acc, const Scalar& c, const Vec& v) {
  for (size_t i = 0; i < v.size(); ++i) acc[i] += c * v[i];
}

Vec e(int n, int i) {
  Vec v(static_cast<size_t>(n));
  v[i] = 1;
  return v;
}

// ∇²_{p,q} S(c,d) straight from level 2
Scalar hess(const TensorJet& s, int p, int q, int c, int d) { return s.at({p, q}).get({c, d}); }

// L(h) for a 2-tensor: Sym(g0 ⊗ h)
SymTensor l_of(const SymTensor& h) {
  return symmetrize(h.dim(), 4, [&](const std::vector<int>& t) {
    return t[0] == t[1] ? h.get({t[2], t[3]}) : Scalar(0);
  });
}

SymTensor compose_j(const SymTensor& s, const rk::Mat& j) {
  int n = s.dim();
  SymTensor out(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Scalar v;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) v += j(c, a) * j(d, b) * s.get({c, d});
      out.set({a, b}, v);
    }
  return out;
}

// Sym_{wxyz} ∇²_{Jw,Jx} S(y,z), i.e. minus D^J D^J S
SymTensor sym_hess_jj(const TensorJet& s, const rk::Mat& j) {
  int n = s.dim();
  std::vector<Scalar> raw(static_cast<size_t>(n) * n * n * n);
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      for (int p = 0; p < n; ++p) {
        if (j(p, w).is_zero()) continue;
        for (int q = 0; q < n; ++q) {
          if (j(q, x).is_zero()) continue;
          Scalar c = j(p, w) * j(q, x);
          for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) raw[((w * n + x) * n + y) * n + z] += c * hess(s, p, q, y, z);
        }
      }
  return symmetrize(n, 4, [&](const std::vector<int>& t) { return raw[((t[0] * n + t[1]) * n + t[2]) * n + t[3]]; });
}

}  // namespace

Vec curvature(const Geometry& g, const Vec& x, const Vec& y, const Vec& z) {
  // R(X,Y)Z = <Y,Z>X - <X,Z>Y + Σ_J (<JY,Z>JX - <JX,Z>JY + 2<X,JY>JZ)
  Vec r(x.size());
  add_to(r, ip(y, z), x);
  add_to(r, -ip(x, z), y);
  if (g.tag() == Kind::Octonion) throw std::invalid_argument("no closed form here for the octonion model");
  for (const rk::Mat& j : g.j_ops()) {
    Vec jx = mat_vec(j, x), jy = mat_vec(j, y), jz = mat_vec(j, z);
    add_to(r, ip(jy, z), jx);
    add_to(r, -ip(jx, z), jy);
    add_to(r, Scalar(2) * ip(x, jy), jz);
  }
  return r;
}

SymTensor rough_laplacian(const TensorJet& s) {
  int n = s.dim();
  SymTensor out(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Scalar v;
      for (int k = 0; k < n; ++k) v -= hess(s, k, k, a, b);
      out.set({a, b}, v);
    }
  return out;
}

Scalar trace2(const SymTensor& s) {
  Scalar t;
  for (int i = 0; i < s.dim(); ++i) t += s.get({i, i});
  return t;
}

SymTensor q(const TensorJet& s) {
  const Geometry& g = s.geometry();
  int n = g.n();
  const SymTensor& S = s.value();
  SymTensor lap = rough_laplacian(s);
  Scalar tr = trace2(S);
  SymTensor g0(n, 2);
  for (int i = 0; i < n; ++i) g0.set({i, i}, 1);

  if (g.tag() == Kind::Real) {
    // -½S + ¼∇*∇S + ½(tr S)g0
    SymTensor q(n, 2);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        q.set({a, b}, Scalar(-1, 2) * S.get({a, b}) + Scalar(1, 4) * lap.get({a, b}) +
                          (a == b ? Scalar(1, 2) * tr : Scalar(0)));
    return q;
  }
  if (g.tag() == Kind::Complex || g.tag() == Kind::Quaternion) {
    // ¼L(∇*∇S) + ½(-L(S) + (tr S)L(g0) + Σ L(S∘J_i)) - ⅛ Σ D^{J_i}D^{J_i}S
    SymTensor inner2(n, 2);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        inner2.set({a, b}, Scalar(1, 4) * lap.get({a, b}) - Scalar(1, 2) * S.get({a, b}) +
                               (a == b ? Scalar(1, 2) * tr : Scalar(0)));
    for (const rk::Mat& j : g.j_ops()) inner2.addmul(Scalar(1, 2), compose_j(S, j));
    SymTensor q = l_of(inner2);
    for (const rk::Mat& j : g.j_ops()) q.addmul(Scalar(1, 8), sym_hess_jj(s, j));
    return q;
  }
  // octonion: L(⅓(tr S)g0 + ⅙S - ⅙R°S + 7/24 ∇*∇S) - 1/24 Sym R°(∇²S),
  // R°(T)(X,Y,...) = -Σ_i T(R(e_i,X)Y, e_i, ...)
  std::vector<Vec> rv(static_cast<size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) rv[(i * n + a) * n + b] = g.curvature(e(n, i), e(n, a), e(n, b));
  SymTensor a2(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Scalar rc;
      for (int i = 0; i < n; ++i) {
        const Vec& r = rv[(i * n + a) * n + b];
        for (int p = 0; p < n; ++p)
          if (!r[p].is_zero()) rc -= r[p] * S.get({p, i});
      }
      a2.set({a, b}, (a == b ? Scalar(1, 3) * tr : Scalar(0)) + Scalar(1, 6) * S.get({a, b}) - Scalar(1, 6) * rc +
                         Scalar(7, 24) * lap.get({a, b}));
    }
  SymTensor q = l_of(a2);
  std::vector<Scalar> raw(static_cast<size_t>(n) * n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i) {
        const Vec& r = rv[(i * n + a) * n + b];
        for (int p = 0; p < n; ++p) {
          if (r[p].is_zero()) continue;
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) raw[((a * n + b) * n + c) * n + d] -= r[p] * hess(s, p, i, c, d);
        }
      }
  SymTensor rh =
      symmetrize(n, 4, [&](const std::vector<int>& t) { return raw[((t[0] * n + t[1]) * n + t[2]) * n + t[3]]; });
  q.addmul(Scalar(-1, 24), rh);
  return q;
}

Scalar sphere_moment(int n, const std::vector<int>& alpha) {
  int total = 0;
  Scalar num(1);
  for (int a : alpha) {
    if (a % 2) return Scalar(0);
    total += a;
    for (int k = a - 1; k > 0; k -= 2) num *= Scalar(k);
  }
  Scalar den(1);
  for (int k = 0; k < total; k += 2) den *= Scalar(n + k);
  return num / den;
}

}  // namespace oracle
