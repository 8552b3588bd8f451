#pragma once
// rank-one symmetric space models at a point
//
// Curvature convention: R(X,Y)Z below is minus the usual [∇_X,∇_Y]Z - ∇_[X,Y]Z,
// so that R(W,v)v has eigenvalues λ² ∈ {0,1,4} and <R(v,w)v,w> = -K(v,w).
// In the real model R(X,Y)Z = <Y,Z>X - <X,Z>Y.
#include <string>
#include <vector>

#include "rigiditykit/linalg.hpp"
#include "rigiditykit/octonion.hpp"
#include "rigiditykit/sym_tensor.hpp"

namespace rk {

enum class Kind { Real, Complex, Quaternion, Octonion };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct GeometryKind {
  Kind tag = Kind::Real;
  int n = 3;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void validate(const GeometryKind& g);  // throws DomainError
bool admissible(const GeometryKind& g);
int structure_rank(Kind k);  // r = 1, 2, 4, 8
int m_g0(Kind k);            // degree of Q(S): 2 real, 4 otherwise

struct AdaptedFrame {
  Vec v;
  std::vector<Vec> y;       // y[0] = v
  std::vector<int> lambda;  // 0, 2 (r-1 times), 1
};

// entry of R(e_a,e_b) e_c = Σ val e_d
struct CurvEntry {
  int c, d;
  mpq_class val;
};

class Geometry {
 public:
  explicit Geometry(GeometryKind g);
  // quaternionic structures replaced by J'_i = Σ_j rot(i,j) J_j
  Geometry(GeometryKind g, const Mat& rot);

  const GeometryKind& kind() const { return kind_; }
  Kind tag() const { return kind_.tag; }
  int n() const { return kind_.n; }

  // complex: {J}; quaternion: {J1,J2,J3}; octonion: {Ψ} (coordinates of O² ≅ R^16)
  const std::vector<Mat>& j_ops() const { return j_; }
  const std::vector<SparseCols>& j_sparse() const { return js_; }
  const Mat& J(int i = 0) const { return j_.at(i); }
  int num_j() const;  // number of complex structures (0,1,3,0)

  // full tensor, all kinds (octonion: polarised from Cayley frames)
  const mpq_class& R(int a, int b, int c, int d) const {
    return r_[((static_cast<size_t>(a) * n() + b) * n() + c) * n() + d];
  }
  const std::vector<CurvEntry>& R_ab(int a, int b) const { return rs_[static_cast<size_t>(a) * n() + b]; }
  // columns c -> (d, R(e_a,e_b,e_c)_d): the action of R(e_a,e_b) on one slot
  const SparseCols& curv_cols(int a, int b) const { return rc_[static_cast<size_t>(a) * n() + b]; }
  Vec curvature(const Vec& x, const Vec& y, const Vec& z) const;

  AdaptedFrame adapted_frame(const Vec& v) const;
  // R(W,v)v through the adapted frame at v
  Vec curvature_contract(const Vec& v, const Vec& w) const;

  // orthonormal basis of the Cayley line through v (octonion only), unit v
  std::vector<Vec> cayley_frame(const Vec& v) const;

  // R°(T)(X,Y,...) = -Σ_i T(R(e_i,X)Y, e_i, ...), for symmetric T of degree >= 2
  RawTensor r_circ_raw(const RawTensor& t) const;
  SymTensor r_circ(const SymTensor& s) const;  // degree 2 input
  // Ric as a multiple of the identity: Ric(X) = -Σ R(X,e_i)e_i
  const mpq_class& ricci_factor() const { return ric_; }
  SymTensor s_ric(const SymTensor& s) const;  // S∘Ric

 private:
  void build_structures();
  void build_curvature();
  GeometryKind kind_;
  std::vector<Mat> j_;
  std::vector<SparseCols> js_;
  std::vector<mpq_class> r_;
  std::vector<std::vector<CurvEntry>> rs_;
  std::vector<SparseCols> rc_;
  mpq_class ric_;
};

// closed-form curvature for real/complex/quaternion; octonion throws DomainError
Vec curvature_apply(const Geometry& g, const Vec& x, const Vec& y, const Vec& z);

// Cay(a,b) = O(1, a^{-1}b) if a != 0, O(0,1) otherwise; orthonormal basis in O²
std::vector<Vec> cayley_line(const Octonion& a, const Octonion& b);

// extends orthonormal rational vectors to an orthonormal basis (Householder)
std::vector<Vec> complete_orthonormal(const std::vector<Vec>& us, int n);

Vec J_apply(const Mat& j, const Vec& v);
Scalar norm2(const Vec& v);

}  // namespace rk
