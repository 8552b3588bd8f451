#include "rigiditykit/sym_tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace rk {

SymTensor::SymTensor(int n, int m) : n_(n), m_(m), c_(sym_dim(n, m)) {
  if (n < 1 || n > 255 || m < 0) throw std::invalid_argument("bad tensor shape");
}

Scalar SymTensor::get(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != m_) throw std::invalid_argument("index length does not match degree");
  Idx buf[64];
  for (int k = 0; k < m_; ++k) {
    if (idx[k] < 0 || idx[k] >= n_) throw std::out_of_range("tensor index out of range");
    buf[k] = static_cast<Idx>(idx[k]);
  }
  return c_[rank_any(buf, m_)];
}

void SymTensor::set(std::span<const int> idx, const Scalar& v) {
  if (static_cast<int>(idx.size()) != m_) throw std::invalid_argument("index length does not match degree");
  Idx buf[64];
  for (int k = 0; k < m_; ++k) {
    if (idx[k] < 0 || idx[k] >= n_) throw std::out_of_range("tensor index out of range");
    buf[k] = static_cast<Idx>(idx[k]);
  }
  c_[rank_any(buf, m_)] = v;
}

bool SymTensor::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool SymTensor::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_real(); });
}

SymTensor SymTensor::conj() const {
  SymTensor r = *this;
  for (auto& s : r.c_) s = s.conj();
  return r;
}

Scalar SymTensor::eval(const Vec& v) const {
  const IndexSet& is = indices();
  Scalar total;
  for (size_t r = 0; r < c_.size(); ++r) {
    if (c_[r].is_zero()) continue;
    Scalar term = c_[r] * Scalar(static_cast<long>(is.orbit[r]));
    const Idx* I = is.at(r);
    for (int k = 0; k < m_ && !term.is_zero(); ++k) term *= v[I[k]];
    total += term;
  }
  return total;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  if (o.n_ != n_ || o.m_ != m_) throw std::invalid_argument("tensor shape mismatch in +");
  for (size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
  if (o.n_ != n_ || o.m_ != m_) throw std::invalid_argument("tensor shape mismatch in -");
  for (size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
  return *this;
}

SymTensor& SymTensor::operator*=(const Scalar& s) {
  for (auto& x : c_)
    if (!x.is_zero()) x *= s;
  return *this;
}

void SymTensor::addmul(const Scalar& s, const SymTensor& o) {
  if (o.n_ != n_ || o.m_ != m_) throw std::invalid_argument("tensor shape mismatch in addmul");
  if (s.is_zero()) return;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i].addmul(s, o.c_[i]);
}

SymTensor SymTensor::operator-() const {
  SymTensor r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

RawTensor::RawTensor(int n, int k) : n_(n), k_(k) {
  size_t sz = 1;
  for (int i = 0; i < k; ++i) sz *= static_cast<size_t>(n);
  v_.resize(sz);
}

static size_t raw_offset(int n, int k, std::span<const int> idx) {
  if (static_cast<int>(idx.size()) != k) throw std::invalid_argument("raw index length mismatch");
  size_t off = 0;
  for (int i = 0; i < k; ++i) {
    if (idx[i] < 0 || idx[i] >= n) throw std::out_of_range("raw index out of range");
    off = off * n + idx[i];
  }
  return off;
}

Scalar& RawTensor::at(std::span<const int> idx) { return v_[raw_offset(n_, k_, idx)]; }
const Scalar& RawTensor::at(std::span<const int> idx) const { return v_[raw_offset(n_, k_, idx)]; }

SymTensor scalar_tensor(int n, const Scalar& s) {
  SymTensor t(n, 0);
  t[0] = s;
  return t;
}

SymTensor metric(int n) {
  SymTensor g(n, 2);
  for (int i = 0; i < n; ++i) g.set({i, i}, 1);
  return g;
}

SymTensor from_vector(const Vec& v) {
  SymTensor t(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) t[i] = v[i];
  return t;
}

Vec to_vector(const SymTensor& t) {
  if (t.degree() != 1) throw std::invalid_argument("to_vector needs degree 1");
  return t.coeffs();
}

RawTensor to_raw(const SymTensor& t) {
  RawTensor r(t.dim(), t.degree());
  std::vector<int> idx(static_cast<size_t>(t.degree()), 0);
  for (size_t f = 0; f < r.size(); ++f) {
    size_t x = f;
    for (int k = t.degree() - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(x % t.dim());
      x /= t.dim();
    }
    r.flat(f) = t.get(idx);
  }
  return r;
}

SymTensor symmetrize(const RawTensor& t) {
  SymTensor s(t.dim(), t.degree());
  const IndexSet& is = s.indices();
  int m = t.degree(), n = t.dim();
  // sum over the orbit of each full tuple, divide by orbit size
  std::vector<int> idx(static_cast<size_t>(m));
  Idx buf[64];
  for (size_t f = 0; f < t.size(); ++f) {
    if (t.flat(f).is_zero()) continue;
    size_t x = f;
    for (int k = m - 1; k >= 0; --k) {
      buf[k] = static_cast<Idx>(x % n);
      x /= n;
    }
    s[rank_any(buf, m)] += t.flat(f);
  }
  for (size_t r = 0; r < s.size(); ++r)
    if (!s[r].is_zero()) s[r] /= Scalar(static_cast<long>(is.orbit[r]));
  return s;
}

SymTensor symmetrize(int n, const std::map<std::vector<int>, Scalar>& entries) {
  int m = -1;
  for (const auto& [k, v] : entries) {
    if (m < 0) m = static_cast<int>(k.size());
    if (static_cast<int>(k.size()) != m) throw std::invalid_argument("malformed input: inconsistent tuple lengths");
  }
  if (m < 0) m = 0;
  RawTensor raw(n, m);
  for (const auto& [k, v] : entries) raw.at(k) += v;
  return symmetrize(raw);
}

SymTensor trace(const SymTensor& s) {
  int m = s.degree(), n = s.dim();
  if (m < 2) throw std::invalid_argument("trace needs degree >= 2");
  SymTensor t(n, m - 2);
  const IndexSet& is = t.indices();
  Idx buf[64];
  for (size_t r = 0; r < t.size(); ++r) {
    const Idx* J = is.at(r);
    Scalar acc;
    for (int i = 0; i < n; ++i) {
      std::copy(J, J + m - 2, buf);
      buf[m - 2] = static_cast<Idx>(i);
      buf[m - 1] = static_cast<Idx>(i);
      acc += s[rank_any(buf, m)];
    }
    t[r] = std::move(acc);
  }
  return t;
}

SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("sym_product dimension mismatch");
  int p = a.degree(), q = b.degree(), m = p + q, n = a.dim();
  SymTensor out(n, m);
  const IndexSet& is = out.indices();
  Scalar w = Scalar(1) / Scalar(mpq_class(binom(m, p)));
  Idx ba[64], bb[64];
  for (size_t r = 0; r < out.size(); ++r) {
    const Idx* I = is.at(r);
    Scalar acc;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (__builtin_popcount(mask) != p) continue;
      int ia = 0, ib = 0;
      for (int k = 0; k < m; ++k) {
        if (mask & (1u << k))
          ba[ia++] = I[k];
        else
          bb[ib++] = I[k];
      }
      const Scalar& x = a[rank_sorted(ba, p)];
      if (x.is_zero()) continue;
      acc.addmul(x, b[rank_sorted(bb, q)]);
    }
    if (!acc.is_zero()) out[r] = acc * w;
  }
  return out;
}

SymTensor l_raise(const SymTensor& h) {
  int p = h.degree(), n = h.dim(), m = p + 2;
  SymTensor out(n, m);
  const IndexSet& is = out.indices();
  Scalar w(2, static_cast<long>((p + 2) * (p + 1)));
  Idx buf[64];
  for (size_t r = 0; r < out.size(); ++r) {
    const Idx* I = is.at(r);
    Scalar acc;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        if (I[a] != I[b]) continue;
        int o = 0;
        for (int k = 0; k < m; ++k)
          if (k != a && k != b) buf[o++] = I[k];
        acc += h[rank_sorted(buf, p)];
      }
    if (!acc.is_zero()) out[r] = acc * w;
  }
  return out;
}

SymTensor l_power(const SymTensor& h, int k) {
  SymTensor r = h;
  for (int i = 0; i < k; ++i) r = l_raise(r);
  return r;
}

Scalar inner_plain(const SymTensor& s, const SymTensor& t) {
  if (s.dim() != t.dim() || s.degree() != t.degree()) throw std::invalid_argument("shape error in inner");
  const IndexSet& is = s.indices();
  Scalar acc;
  for (size_t r = 0; r < s.size(); ++r) {
    if (s[r].is_zero() || t[r].is_zero()) continue;
    acc += Scalar(static_cast<long>(is.orbit[r])) * s[r] * t[r].conj();
  }
  return acc;
}

Scalar inner(const SymTensor& s, const SymTensor& t) {
  return inner_plain(s, t) / Scalar(mpq_class(factorial(s.degree())));
}

namespace {

void compose_rec(const SymTensor& t, const SparseCols& a, const Idx* I, int m, int slot, Idx* buf,
                 const Scalar& coef, Scalar& acc) {
  if (slot == m) {
    Idx tmp[64];
    std::copy(buf, buf + m, tmp);
    acc.addmul(coef, t[rank_any(tmp, m)]);
    return;
  }
  for (const auto& [row, val] : a.cols[I[slot]]) {
    buf[slot] = static_cast<Idx>(row);
    compose_rec(t, a, I, m, slot + 1, buf, coef * val, acc);
  }
}

}  // namespace

SymTensor compose(const SymTensor& t, const SparseCols& a) {
  int m = t.degree();
  SymTensor out(t.dim(), m);
  const IndexSet& is = out.indices();
  Idx buf[64];
  for (size_t r = 0; r < out.size(); ++r) {
    Scalar acc;
    compose_rec(t, a, is.at(r), m, 0, buf, Scalar(1), acc);
    out[r] = std::move(acc);
  }
  return out;
}

SymTensor compose(const SymTensor& t, const Mat& a) { return compose(t, SparseCols(a)); }

SymTensor restrict_to(const SymTensor& t, const Mat& b) {
  if (b.rows != t.dim()) throw std::invalid_argument("restrict_to: row count must match the dimension");
  int m = t.degree();
  SparseCols sc(b);
  SymTensor out(b.cols, m);
  const IndexSet& is = out.indices();
  Idx buf[64];
  for (size_t r = 0; r < out.size(); ++r) {
    Scalar acc;
    compose_rec(t, sc, is.at(r), m, 0, buf, Scalar(1), acc);
    out[r] = std::move(acc);
  }
  return out;
}

SymTensor contract_vec(const SymTensor& t, const Vec& xi) {
  int m = t.degree(), n = t.dim();
  if (m < 1) throw std::invalid_argument("contract needs degree >= 1");
  SymTensor out(n, m - 1);
  const IndexSet& is = out.indices();
  for (size_t r = 0; r < out.size(); ++r) {
    Scalar acc;
    for (int i = 0; i < n; ++i)
      if (!xi[i].is_zero()) acc.addmul(xi[i], t[rank_insert(is.at(r), m - 1, static_cast<Idx>(i))]);
    out[r] = std::move(acc);
  }
  return out;
}

SymTensor j_vec(const SymTensor& t, const Vec& xi) {
  int m = t.degree() + 1, n = t.dim();
  SymTensor out(n, m);
  const IndexSet& is = out.indices();
  Scalar w(1, m);
  for (size_t r = 0; r < out.size(); ++r) {
    const Idx* I = is.at(r);
    Scalar acc;
    for (int p = 0; p < m; ++p)
      if (!xi[I[p]].is_zero()) acc.addmul(xi[I[p]], t[rank_remove(I, m, p)]);
    if (!acc.is_zero()) out[r] = acc * w;
  }
  return out;
}

Scalar trace_l_c1(int n, int p) { return Scalar(2L * (n + 2 * p), static_cast<long>((p + 2) * (p + 1))); }
Scalar trace_l_c2(int p) { return Scalar(static_cast<long>(p * (p - 1)), static_cast<long>((p + 2) * (p + 1))); }

Scalar trace_l_alpha(int n, int q, int k) {
  Scalar alpha = trace_l_c1(n, q);
  for (int j = 2; j <= k; ++j) {
    int p = q + 2 * (j - 1);
    alpha = trace_l_c1(n, p) + trace_l_c2(p) * alpha;
  }
  return alpha;
}

TraceDecomposition trace_decompose(const SymTensor& s) {
  TraceDecomposition d;
  d.dim = s.dim();
  d.degree = s.degree();
  int m = s.degree();
  if (m < 2) {
    d.parts.push_back(s);
    return d;
  }
  // tr(Σ L^k P_k) = Σ_{k>=1} alpha_k L^{k-1} P_k, so the decomposition of tr S
  // determines P_k for k >= 1; P_0 is what is left
  TraceDecomposition dt = trace_decompose(trace(s));
  d.parts.resize(static_cast<size_t>(m / 2 + 1));
  SymTensor rest = s;
  for (int k = 1; k <= m / 2; ++k) {
    d.parts[k] = dt.parts[k - 1];
    d.parts[k] *= Scalar(1) / trace_l_alpha(s.dim(), m - 2 * k, k);
    rest -= l_power(d.parts[k], k);
  }
  d.parts[0] = std::move(rest);
  return d;
}

SymTensor reassemble(const TraceDecomposition& d) {
  SymTensor out(d.dim, d.degree);
  for (size_t k = 0; k < d.parts.size(); ++k) out += l_power(d.parts[k], static_cast<int>(k));
  return out;
}

SymTensor trace_free_part(const SymTensor& s) { return trace_decompose(s).parts[0]; }

}  // namespace rk
