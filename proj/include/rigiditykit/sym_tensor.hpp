#pragma once
// symmetric tensors stored on sorted multi-indices
#include <map>
#include <span>
#include <vector>

#include "rigiditykit/combinatorics.hpp"
#include "rigiditykit/linalg.hpp"
#include "rigiditykit/scalar.hpp"

namespace rk {

class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(int n, int m);

  int dim() const { return n_; }
  int degree() const { return m_; }
  size_t size() const { return c_.size(); }
  const IndexSet& indices() const { return index_set(n_, m_); }

  Scalar& operator[](size_t r) { return c_[r]; }
  const Scalar& operator[](size_t r) const { return c_[r]; }
  std::vector<Scalar>& coeffs() { return c_; }
  const std::vector<Scalar>& coeffs() const { return c_; }

  // value at any ordering of a 0-based index tuple
  Scalar get(std::span<const int> idx) const;
  void set(std::span<const int> idx, const Scalar& v);
  Scalar get(std::initializer_list<int> idx) const { return get(std::span<const int>(idx.begin(), idx.size())); }
  void set(std::initializer_list<int> idx, const Scalar& v) { set(std::span<const int>(idx.begin(), idx.size()), v); }

  bool is_zero() const;
  bool is_real() const;
  SymTensor conj() const;

  // S(v,...,v)
  Scalar eval(const Vec& v) const;

  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(const Scalar& s);
  void addmul(const Scalar& s, const SymTensor& o);
  SymTensor operator-() const;
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(const Scalar& s, SymTensor a) { return a *= s; }
  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.c_ == b.c_;
  }
  friend bool operator!=(const SymTensor& a, const SymTensor& b) { return !(a == b); }

 private:
  int n_ = 0, m_ = 0;
  std::vector<Scalar> c_;
};

// dense tensor without symmetry, n^k entries, first index most significant
class RawTensor {
 public:
  RawTensor() = default;
  RawTensor(int n, int k);
  int dim() const { return n_; }
  int degree() const { return k_; }
  size_t size() const { return v_.size(); }
  Scalar& at(std::span<const int> idx);
  const Scalar& at(std::span<const int> idx) const;
  Scalar& flat(size_t i) { return v_[i]; }
  const Scalar& flat(size_t i) const { return v_[i]; }

 private:
  int n_ = 0, k_ = 0;
  std::vector<Scalar> v_;
};

SymTensor scalar_tensor(int n, const Scalar& s);
SymTensor metric(int n);
SymTensor from_vector(const Vec& v);  // degree-1 tensor
Vec to_vector(const SymTensor& t);
RawTensor to_raw(const SymTensor& t);

SymTensor symmetrize(const RawTensor& t);
// map from index tuples (0-based) to values; throws on inconsistent tuple lengths
SymTensor symmetrize(int n, const std::map<std::vector<int>, Scalar>& entries);

SymTensor trace(const SymTensor& s);
SymTensor l_raise(const SymTensor& h);
SymTensor l_power(const SymTensor& h, int k);
SymTensor sym_product(const SymTensor& a, const SymTensor& b);  // Sym(a⊗b)

// <S,T> = (1/m!) Σ over all index tuples of S·conj(T)
Scalar inner(const SymTensor& s, const SymTensor& t);
// plain sum over all tuples, no 1/m!
Scalar inner_plain(const SymTensor& s, const SymTensor& t);

// T(A·,...,A·)
SymTensor compose(const SymTensor& t, const SparseCols& a);
SymTensor compose(const SymTensor& t, const Mat& a);
// T(B·,...,B·) for an n×k matrix B: a tensor on R^k (restriction to the span of B)
SymTensor restrict_to(const SymTensor& t, const Mat& b);
// ι_ξ T = T(ξ,·,...,·)
SymTensor contract_vec(const SymTensor& t, const Vec& xi);
// j_ξ T = Sym(ξ⊗T)
SymTensor j_vec(const SymTensor& t, const Vec& xi);

// tr L(h) = c1 h + c2 L(tr h) for h of degree p
Scalar trace_l_c1(int n, int p);
Scalar trace_l_c2(int p);
// tr L^k(P) = alpha * L^{k-1}(P) for trace-free P of degree q
Scalar trace_l_alpha(int n, int q, int k);

struct TraceDecomposition {
  int dim = 0, degree = 0;
  std::vector<SymTensor> parts;  // parts[k] trace-free of degree m-2k
};

TraceDecomposition trace_decompose(const SymTensor& s);
SymTensor reassemble(const TraceDecomposition& d);
// trace-free part (part 0)
SymTensor trace_free_part(const SymTensor& s);

}  // namespace rk
