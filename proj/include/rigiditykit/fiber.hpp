#pragma once
// functions on a unit-sphere fibre, kept as spherical-harmonic components
#include <map>
#include <optional>

#include "rigiditykit/geometry.hpp"
#include "rigiditykit/sym_tensor.hpp"

namespace rk {

class FiberPolynomial {
 public:
  explicit FiberPolynomial(int n = 0) : n_(n) {}
  int dim() const { return n_; }
  // component in Ω_m as a trace-free m-tensor
  const std::map<int, SymTensor>& components() const { return c_; }
  void add_component(const SymTensor& t);  // t must be trace-free
  Scalar eval(const Vec& v) const;
  bool is_zero() const;
  FiberPolynomial& operator+=(const FiberPolynomial& o);
  FiberPolynomial& operator-=(const FiberPolynomial& o);
  FiberPolynomial& operator*=(const Scalar& s);
  friend FiberPolynomial operator+(FiberPolynomial a, const FiberPolynomial& b) { return a += b; }
  friend FiberPolynomial operator-(FiberPolynomial a, const FiberPolynomial& b) { return a -= b; }
  friend FiberPolynomial operator*(const Scalar& s, FiberPolynomial a) { return a *= s; }
  friend bool operator==(const FiberPolynomial& a, const FiberPolynomial& b);

 private:
  void prune();
  int n_;
  std::map<int, SymTensor> c_;
};

FiberPolynomial pullback(const SymTensor& s);
FiberPolynomial vertical_laplacian(const FiberPolynomial& p);

// E(v^α) over the unit sphere with normalised measure; mult[i] = α_i
Scalar sphere_moment(int n, const std::vector<int>& mult);
// E(S(v,...,v)) for any symmetric S (not necessarily trace-free)
Scalar sphere_average(const SymTensor& s);
Scalar sphere_average(const FiberPolynomial& p);
// E(p · conj q)
Scalar fiber_inner(const FiberPolynomial& p, const FiberPolynomial& q);

// <S,T> / E(π*S · π*T) for trace-free S,T; `plain` drops the 1/m! weight
Scalar conformal_ratio(const SymTensor& s, const SymTensor& t, bool plain = false);
// the same ratio computed from the closed form Γ(n/2+m)/(2^{1-m} m! π^{n/2})
// divided by the sphere volume, i.e. Λ_m^n with normalised measure, plain inner product
Scalar lambda_normalised(int m, int n);

// fibre operators on tensors (act on every slot)
SymTensor j_apply(const SymTensor& t, const SparseCols& j);
SymTensor v_apply(const SymTensor& t, const SparseCols& j);  // V T = m Sym(T(J·,...))
FiberPolynomial j_action(const FiberPolynomial& p, const Geometry& g, int which = 0);
FiberPolynomial v_operator(const FiberPolynomial& p, const Geometry& g);

// eigen-decomposition of V on Ω_m: parts[k] in E^{i(m-2k)}_m. The spectrum is only
// established for m <= 3; larger m throws unless `extended`, and then min_poly_ok says
// whether the candidate spectrum was right
struct VEigen {
  int m = 0;
  std::vector<SymTensor> parts;
  bool min_poly_ok = false;  // Π_k (V - i(m-2k)) T = 0
};
Scalar v_eigenvalue(int m, int k);  // i(m-2k)
VEigen v_eigendecompose(const SymTensor& t, const SparseCols& j, bool extended = false);
// dimension of each eigenspace on Ω_m (exact rank of the projectors)
std::vector<int> v_spectrum_dims(int n, int m, const SparseCols& j);

}  // namespace rk
