#include "rigiditykit/fiber.hpp"

#include <stdexcept>

namespace rk {

void FiberPolynomial::add_component(const SymTensor& t) {
  if (t.dim() != n_) throw std::invalid_argument("fibre component dimension mismatch");
  auto it = c_.find(t.degree());
  if (it == c_.end())
    c_.emplace(t.degree(), t);
  else
    it->second += t;
  prune();
}

void FiberPolynomial::prune() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second.is_zero())
      it = c_.erase(it);
    else
      ++it;
  }
}

Scalar FiberPolynomial::eval(const Vec& v) const {
  Scalar s;
  for (const auto& [m, t] : c_) s += t.eval(v);
  return s;
}

bool FiberPolynomial::is_zero() const { return c_.empty(); }

FiberPolynomial& FiberPolynomial::operator+=(const FiberPolynomial& o) {
  for (const auto& [m, t] : o.c_) add_component(t);
  return *this;
}

FiberPolynomial& FiberPolynomial::operator-=(const FiberPolynomial& o) {
  for (const auto& [m, t] : o.c_) add_component(-t);
  return *this;
}

FiberPolynomial& FiberPolynomial::operator*=(const Scalar& s) {
  for (auto& [m, t] : c_) t *= s;
  prune();
  return *this;
}

bool operator==(const FiberPolynomial& a, const FiberPolynomial& b) {
  return a.n_ == b.n_ && a.c_ == b.c_;
}

FiberPolynomial pullback(const SymTensor& s) {
  // π*L^k(P) = π*P on the sphere
  FiberPolynomial p(s.dim());
  TraceDecomposition d = trace_decompose(s);
  for (const SymTensor& part : d.parts) p.add_component(part);
  return p;
}

FiberPolynomial vertical_laplacian(const FiberPolynomial& p) {
  FiberPolynomial out(p.dim());
  for (const auto& [m, t] : p.components()) out.add_component(Scalar(static_cast<long>(m) * (p.dim() + m - 2)) * t);
  return out;
}

Scalar sphere_moment(int n, const std::vector<int>& mult) {
  // E(v^α) = Π (α_i - 1)!! / Π_{j < |α|/2} (n + 2j)
  int total = 0;
  mpz_class num = 1;
  for (int a : mult) {
    if (a % 2) return Scalar(0);
    for (int k = a - 1; k > 1; k -= 2) num *= k;
    total += a;
  }
  mpz_class den = 1;
  for (int j = 0; j < total / 2; ++j) den *= n + 2 * j;
  return Scalar(mpq_class(num, den));
}

Scalar sphere_average(const SymTensor& s) {
  const IndexSet& is = s.indices();
  int n = s.dim(), m = s.degree();
  if (m % 2) return Scalar(0);
  Scalar acc;
  std::vector<int> mult(static_cast<size_t>(n));
  for (size_t r = 0; r < s.size(); ++r) {
    if (s[r].is_zero()) continue;
    std::fill(mult.begin(), mult.end(), 0);
    const Idx* I = is.at(r);
    for (int k = 0; k < m; ++k) ++mult[I[k]];
    Scalar mom = sphere_moment(n, mult);
    if (mom.is_zero()) continue;
    acc += Scalar(static_cast<long>(is.orbit[r])) * s[r] * mom;
  }
  return acc;
}

Scalar sphere_average(const FiberPolynomial& p) {
  Scalar s;
  for (const auto& [m, t] : p.components()) s += sphere_average(t);
  return s;
}

Scalar fiber_inner(const FiberPolynomial& p, const FiberPolynomial& q) {
  // product of pullbacks is the pullback of the symmetric product
  Scalar s;
  for (const auto& [m, a] : p.components())
    for (const auto& [k, b] : q.components()) s += sphere_average(sym_product(a, b.conj()));
  return s;
}

Scalar conformal_ratio(const SymTensor& s, const SymTensor& t, bool plain) {
  Scalar avg = sphere_average(sym_product(s, t.conj()));
  Scalar num = plain ? inner_plain(s, t) : inner(s, t);
  return num / avg;
}

Scalar lambda_normalised(int m, int n) {
  // Γ(n/2+m)/(2^{1-m} m! π^{n/2}) times |S^{n-1}| = 2π^{n/2}/Γ(n/2)
  // = 2^m Γ(n/2+m)/(m! Γ(n/2)) = Π_{j<m}(n+2j) / m!
  mpz_class num = 1;
  for (int j = 0; j < m; ++j) num *= n + 2 * j;
  return Scalar(mpq_class(num, factorial(m)));
}

SymTensor j_apply(const SymTensor& t, const SparseCols& j) { return compose(t, j); }

SymTensor v_apply(const SymTensor& t, const SparseCols& j) {
  int m = t.degree();
  SymTensor out(t.dim(), m);
  if (m == 0) return out;
  const IndexSet& is = out.indices();
  for (size_t r = 0; r < out.size(); ++r) {
    const Idx* I = is.at(r);
    Scalar acc;
    for (int p = 0; p < m; ++p)
      for (const auto& [b, val] : j.cols[I[p]]) acc.addmul(val, t[rank_replace(I, m, p, static_cast<Idx>(b))]);
    out[r] = std::move(acc);
  }
  return out;
}

FiberPolynomial j_action(const FiberPolynomial& p, const Geometry& g, int which) {
  if (g.num_j() == 0) throw DomainError("J action needs a complex or quaternionic structure");
  FiberPolynomial out(p.dim());
  for (const auto& [m, t] : p.components()) out.add_component(j_apply(t, g.j_sparse().at(which)));
  return out;
}

FiberPolynomial v_operator(const FiberPolynomial& p, const Geometry& g) {
  if (g.tag() != Kind::Complex) throw DomainError("V is defined for the complex model");
  FiberPolynomial out(p.dim());
  for (const auto& [m, t] : p.components()) out.add_component(v_apply(t, g.j_sparse()[0]));
  return out;
}

Scalar v_eigenvalue(int m, int k) { return Scalar(mpq_class(0), mpq_class(m - 2 * k)); }

VEigen v_eigendecompose(const SymTensor& t, const SparseCols& j, bool extended) {
  int m = t.degree();
  if (m > 3 && !extended) throw std::out_of_range("V eigendecomposition is only established for m <= 3");
  VEigen e;
  e.m = m;
  // Lagrange projectors on the candidate spectrum {i(m-2k)}
  for (int k = 0; k <= m; ++k) {
    SymTensor acc = t;
    Scalar mu = v_eigenvalue(m, k);
    for (int l = 0; l <= m; ++l) {
      if (l == k) continue;
      Scalar nu = v_eigenvalue(m, l);
      SymTensor va = v_apply(acc, j);
      va.addmul(-nu, acc);
      va *= Scalar(1) / (mu - nu);
      acc = std::move(va);
    }
    e.parts.push_back(std::move(acc));
  }
  SymTensor chk = t;
  for (int l = 0; l <= m; ++l) {
    SymTensor va = v_apply(chk, j);
    va.addmul(-v_eigenvalue(m, l), chk);
    chk = std::move(va);
  }
  e.min_poly_ok = chk.is_zero();
  return e;
}

std::vector<int> v_spectrum_dims(int n, int m, const SparseCols& j) {
  // spanning set of Ω_m: trace-free parts of the basis tensors
  size_t N = sym_dim(n, m);
  std::vector<VEigen> eig;
  for (size_t r = 0; r < N; ++r) {
    SymTensor e(n, m);
    e[r] = 1;
    eig.push_back(v_eigendecompose(trace_free_part(e), j));
  }
  std::vector<int> dims;
  for (int k = 0; k <= m; ++k) {
    Mat M(static_cast<int>(N), static_cast<int>(N));
    for (size_t c = 0; c < N; ++c)
      for (size_t r = 0; r < N; ++r) M(static_cast<int>(r), static_cast<int>(c)) = eig[c].parts[k][r];
    dims.push_back(exact_rank(M));
  }
  return dims;
}

}  // namespace rk
