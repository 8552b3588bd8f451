#include "rigiditykit/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace rk {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Mat::col(int j) const {
  Vec v(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

bool Mat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Mat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Scalar& xik = x(i, k);
      if (xik.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j).addmul(xik, y(k, j));
    }
  return r;
}

Vec operator*(const Mat& x, const Vec& v) {
  if (x.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
  Vec r(static_cast<size_t>(x.rows));
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) r[i].addmul(x(i, k), v[k]);
  return r;
}

Mat operator+(const Mat& x, const Mat& y) {
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Mat operator-(const Mat& x, const Mat& y) {
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Mat operator*(const Scalar& s, const Mat& x) {
  Mat r = x;
  for (auto& e : r.a) e *= s;
  return r;
}

SparseCols::SparseCols(const Mat& m) : n(m.rows), cols(static_cast<size_t>(m.cols)) {
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i)
      if (!m(i, j).is_zero()) cols[j].emplace_back(i, m(i, j));
}

Scalar dot(const Vec& x, const Vec& y) {
  Scalar s;
  for (size_t i = 0; i < x.size(); ++i) s.addmul(x[i], y[i]);
  return s;
}

Vec axpy(const Scalar& s, const Vec& x, const Vec& y) {
  Vec r = y;
  for (size_t i = 0; i < x.size(); ++i) r[i].addmul(s, x[i]);
  return r;
}

Vec scaled(const Scalar& s, const Vec& x) {
  Vec r = x;
  for (auto& e : r) e *= s;
  return r;
}

Vec basis_vec(int n, int i) {
  Vec v(static_cast<size_t>(n));
  v[i] = 1;
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

namespace {

// row echelon in place; returns pivot columns
std::vector<int> echelon(Mat& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = Scalar(1) / m(r, c);
    for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (int j = c; j < m.cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

unsigned long mod_of(const mpq_class& q, unsigned long p, bool& ok) {
  unsigned long den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
  if (den == 0) {
    ok = false;
    return 0;
  }
  unsigned long num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
  mpz_class d(den), pp(p), inv;
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
  return static_cast<unsigned long>((static_cast<unsigned __int128>(num) * inv.get_ui()) % p);
}

unsigned long pow_mod(unsigned long b, unsigned long e, unsigned long p) {
  unsigned __int128 r = 1, x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<unsigned long>(r);
}

}  // namespace

int exact_rank(Mat m) { return static_cast<int>(echelon(m).size()); }

int modular_rank(const Mat& m, unsigned long p) {
  std::vector<unsigned long> a(m.a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!m.a[i].is_real()) return -1;
    bool ok = true;
    a[i] = mod_of(m.a[i].re, p, ok);
    if (!ok) return -1;
  }
  int rows = m.rows, cols = m.cols, r = 0;
  auto at = [&](int i, int j) -> unsigned long& { return a[static_cast<size_t>(i) * cols + j]; };
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    unsigned long inv = pow_mod(at(r, c), p - 2, p);
    for (int j = c; j < cols; ++j) at(r, j) = static_cast<unsigned long>(static_cast<unsigned __int128>(at(r, j)) * inv % p);
    for (int i = r + 1; i < rows; ++i) {
      unsigned long f = at(i, c);
      if (!f) continue;
      for (int j = c; j < cols; ++j) {
        unsigned long t = static_cast<unsigned long>(static_cast<unsigned __int128>(f) * at(r, j) % p);
        at(i, j) = at(i, j) >= t ? at(i, j) - t : at(i, j) + p - t;
      }
    }
    ++r;
  }
  return r;
}

int certified_rank(const Mat& m, bool* used_modular) {
  // rank mod p never exceeds the rank over Q, so hitting min(rows, cols) settles it
  const unsigned long primes[] = {2305843009213693951UL, 1000000007UL};
  int full = std::min(m.rows, m.cols);
  for (unsigned long p : primes) {
    int r = modular_rank(m, p);
    if (r == full) {
      if (used_modular) *used_modular = true;
      return r;
    }
  }
  if (used_modular) *used_modular = false;
  return exact_rank(m);
}

std::vector<Vec> kernel(Mat m) {
  std::vector<int> piv = echelon(m);
  std::vector<bool> is_piv(static_cast<size_t>(m.cols), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(static_cast<size_t>(m.cols));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace rk
