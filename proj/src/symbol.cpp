#include "rigiditykit/symbol.hpp"

#include <stdexcept>

namespace rk {

namespace {

void need_nonzero(const Vec& xi) {
  if (is_zero(xi)) throw DomainError("principal symbol needs a nonzero covector");
}

SymTensor unit_tensor(int n, int m, size_t r) {
  SymTensor e(n, m);
  e[r] = Scalar(1);
  return e;
}

// Sym(A ⊗ S); a degree-0 A is a plain factor
SymTensor times_form(const SymTensor& a, const SymTensor& s) {
  if (a.degree() == 0) return a[0] * s;
  return sym_product(a, s);
}

}  // namespace

SymTensor symbol_form(const Geometry& g, const Vec& xi) {
  need_nonzero(xi);
  int n = g.n();
  Scalar x2 = dot(xi, xi);
  switch (g.tag()) {
    case Kind::Real:
      return scalar_tensor(n, Scalar(1, 4) * x2);
    case Kind::Complex:
    case Kind::Quaternion: {
      SymTensor a = Scalar(1, 4) * x2 * metric(n);
      for (int i = 0; i < g.num_j(); ++i) {
        SymTensor jx = from_vector(J_apply(g.J(i), xi));
        a.addmul(Scalar(-1, 8), sym_product(jx, jx));
      }
      return a;
    }
    case Kind::Octonion: {
      SymTensor rho(n, 2);
      // ρ(x,y) = Σ ξ_a ξ_d R(a,x,y,d)
      RawTensor raw(n, 2);
      for (int a = 0; a < n; ++a) {
        if (xi[a].is_zero()) continue;
        for (int x = 0; x < n; ++x)
          for (const CurvEntry& e : g.R_ab(a, x)) {
            if (xi[e.d].is_zero()) continue;
            int idx[2] = {x, e.c};
            raw.at(idx).addmul(xi[a] * xi[e.d], Scalar(mpq_class(e.val)));
          }
      }
      rho = symmetrize(raw);
      SymTensor a = Scalar(7) * x2 * metric(n);
      a -= rho;
      a *= Scalar(1, 24);
      return a;
    }
  }
  throw std::logic_error("unknown geometry");
}

SymTensor SymbolMap::apply(const SymTensor& s) const {
  if (s.dim() != n || s.degree() != 2) throw std::invalid_argument("symbol acts on 2-tensors of the model dimension");
  SymTensor out(n, out_degree);
  Vec r = matrix * s.coeffs();
  out.coeffs() = std::move(r);
  return out;
}

SymbolMap assemble_symbol(const Geometry& g, const Vec& xi) {
  int n = g.n();
  SymTensor a = symbol_form(g, xi);
  SymbolMap m;
  m.n = n;
  m.out_degree = m_g0(g.tag());
  m.xi = xi;
  size_t in = sym_dim(n, 2), out = sym_dim(n, m.out_degree);
  m.matrix = Mat(static_cast<int>(out), static_cast<int>(in));
  for (size_t k = 0; k < in; ++k) m.matrix.set_col(static_cast<int>(k), times_form(a, unit_tensor(n, 2, k)).coeffs());
  return m;
}

SymTensor symbol_displayed(const Geometry& g, const Vec& xi, const SymTensor& s) {
  need_nonzero(xi);
  int n = g.n();
  Scalar x2 = dot(xi, xi);
  switch (g.tag()) {
    case Kind::Real:
      return Scalar(1, 4) * x2 * s;
    case Kind::Complex:
    case Kind::Quaternion: {
      SymTensor out = Scalar(1, 4) * x2 * l_raise(s);
      for (int i = 0; i < g.num_j(); ++i) {
        Vec jx = J_apply(g.J(i), xi);
        out.addmul(Scalar(-1, 8), j_vec(j_vec(s, jx), jx));
      }
      return out;
    }
    case Kind::Octonion: {
      RawTensor t(n, 4);
      RawTensor sr = to_raw(s);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          Scalar w = xi[a] * xi[b];
          if (w.is_zero()) continue;
          size_t base = (static_cast<size_t>(a) * n + b) * n * n;
          for (size_t q = 0; q < static_cast<size_t>(n) * n; ++q) t.flat(base + q) = w * sr.flat(q);
        }
      // σ of -Sym R°(∇²·) is +Sym R°(ξ⊗ξ⊗S)
      SymTensor out = Scalar(7) * x2 * l_raise(s);
      out += symmetrize(g.r_circ_raw(t));
      out *= Scalar(1, 24);
      return out;
    }
  }
  throw std::logic_error("unknown geometry");
}

SymTensor symbol_from_jet(const Geometry& g, const Vec& xi, const SymTensor& s) {
  need_nonzero(xi);
  int n = g.n();
  TensorJet t(g, 2, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Scalar w = -(xi[a] * xi[b]);
      if (!w.is_zero()) t.level(2)[static_cast<size_t>(a) * n + b] = w * s;
    }
  return q_apply(t);
}

std::vector<SymTensor> kernel_iota(int n, const Vec& xi) {
  size_t d = sym_dim(n, 2);
  Mat m(n, static_cast<int>(d));
  for (size_t k = 0; k < d; ++k) m.set_col(static_cast<int>(k), to_vector(contract_vec(unit_tensor(n, 2, k), xi)));
  std::vector<SymTensor> out;
  for (const Vec& v : kernel(m)) {
    SymTensor s(n, 2);
    s.coeffs() = v;
    out.push_back(std::move(s));
  }
  return out;
}

Mat perp_basis(const Vec& xi) {
  need_nonzero(xi);
  int n = static_cast<int>(xi.size());
  int k = 0;
  while (xi[k].is_zero()) ++k;
  Mat b(n, n - 1);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    // integral when ξ is
    b(i, c) = xi[k];
    b(k, c) = -xi[i];
    ++c;
  }
  return b;
}

InjectivityResult solenoidal_injectivity(const Geometry& g, const Vec& xi, bool via_kernel) {
  SymTensor a = symbol_form(g, xi);
  Mat b = perp_basis(xi);
  int n = g.n(), m = m_g0(g.tag());
  InjectivityResult r;
  std::vector<SymTensor> cols;
  if (via_kernel) {
    // generic kernel basis, restrict every image
    for (const SymTensor& k : kernel_iota(n, xi)) cols.push_back(restrict_to(times_form(a, k), b));
    r.dim_kernel = static_cast<int>(cols.size());
  } else {
    // ker ι_ξ = S^2(ξ^⊥) and the columns of b are a basis of ξ^⊥, so in those
    // coordinates the restricted map is S ↦ Sym(A|ξ^⊥ ⊗ S) on all of S^2(R^{n-1})
    SymTensor ap = restrict_to(a, b);
    size_t d = sym_dim(n - 1, 2);
    for (size_t k = 0; k < d; ++k) cols.push_back(times_form(ap, unit_tensor(n - 1, 2, k)));
    r.dim_kernel = static_cast<int>(d);
  }
  Mat M(static_cast<int>(sym_dim(n - 1, m)), static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) M.set_col(static_cast<int>(k), cols[k].coeffs());
  r.rank = certified_rank(M, &r.modular);
  return r;
}

SymTensor iota_l_residual(const SymTensor& h, const Vec& xi) {
  int p = h.degree();
  SymTensor r = contract_vec(l_raise(h), xi);
  if (p > 0) r.addmul(Scalar(-p, p + 2), l_raise(contract_vec(h, xi)));
  r.addmul(Scalar(-2, p + 2), j_vec(h, xi));
  return r;
}

ScalarBound scalar_bound(const Geometry& g, const Vec& xi, const Vec& v) {
  if (norm2(v) != Scalar(1)) throw DomainError("scalar bound needs an exactly unit vector");
  Scalar x2 = dot(xi, xi);
  ScalarBound b;
  if (g.num_j() > 0) {
    b.value = x2;
    Vec rest = xi;
    Scalar xv = dot(xi, v);
    rest = axpy(-xv, v, rest);
    for (int i = 0; i < g.num_j(); ++i) {
      Vec jv = J_apply(g.J(i), v);
      Scalar c = dot(xi, jv);
      b.value -= Scalar(1, 2) * c * c;
      rest = axpy(-c, jv, rest);
    }
    b.bound = Scalar(1, 2) * x2;
    b.certificate = Scalar(1, 2) * (dot(rest, rest) + xv * xv);
    return b;
  }
  if (g.tag() == Kind::Octonion) {
    AdaptedFrame fr = g.adapted_frame(v);
    b.value = Scalar(7) * x2;
    Scalar cert;
    for (size_t j = 0; j < fr.y.size(); ++j) {
      Scalar c = dot(xi, fr.y[j]);
      int l = fr.lambda[j];
      b.value -= Scalar(l * l) * c * c;
      if (l == 0) cert += Scalar(4) * c * c;
      if (l == 1) cert += Scalar(3) * c * c;
    }
    b.bound = Scalar(3) * x2;
    b.certificate = cert;
    return b;
  }
  throw DomainError("no scalar bound is stated for the real model");
}

}  // namespace rk
