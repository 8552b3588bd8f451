#include "rigiditykit/geometry.hpp"

#include <stdexcept>

namespace rk {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Real: return "real";
    case Kind::Complex: return "complex";
    case Kind::Quaternion: return "quaternion";
    case Kind::Octonion: return "octonion";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "real") return Kind::Real;
  if (s == "complex") return Kind::Complex;
  if (s == "quaternion") return Kind::Quaternion;
  if (s == "octonion") return Kind::Octonion;
  throw DomainError("unknown geometry '" + s + "'");
}

bool admissible(const GeometryKind& g) {
  switch (g.tag) {
    case Kind::Real: return g.n >= 3;
    case Kind::Complex: return g.n >= 4 && g.n % 2 == 0;
    case Kind::Quaternion: return g.n >= 8 && g.n % 4 == 0;
    case Kind::Octonion: return g.n == 16;
  }
  return false;
}

void validate(const GeometryKind& g) {
  if (!admissible(g))
    throw DomainError("inadmissible dimension n=" + std::to_string(g.n) + " for " + kind_name(g.tag) + " geometry");
}

int structure_rank(Kind k) {
  switch (k) {
    case Kind::Real: return 1;
    case Kind::Complex: return 2;
    case Kind::Quaternion: return 4;
    case Kind::Octonion: return 8;
  }
  return 1;
}

int m_g0(Kind k) { return k == Kind::Real ? 2 : 4; }

Vec J_apply(const Mat& j, const Vec& v) { return j * v; }

Scalar norm2(const Vec& v) { return dot(v, v); }

namespace {

// closed forms; Real/Complex/Quaternion only
Vec closed_form(Kind k, const std::vector<Mat>& js, const Vec& x, const Vec& y, const Vec& z) {
  Vec r = axpy(dot(y, z), x, scaled(-dot(x, z), y));
  if (k == Kind::Real) return r;
  for (const Mat& j : js) {
    Vec jx = j * x, jy = j * y, jz = j * z;
    r = axpy(dot(jy, z), jx, r);
    r = axpy(-dot(jx, z), jy, r);
    r = axpy(Scalar(2) * dot(x, jy), jz, r);
  }
  return r;
}

Octonion to_oct(const Vec& v, int off) {
  Octonion o;
  for (int i = 0; i < 8; ++i) o.c[i] = v[off + i];
  return o;
}

Vec join(const Octonion& a, const Octonion& b) {
  Vec v(16);
  for (int i = 0; i < 8; ++i) {
    v[i] = a.c[i];
    v[8 + i] = b.c[i];
  }
  return v;
}

// f_k spanning the Cayley line through v, each of squared norm |v|^2
std::vector<Vec> cayley_vectors(const Vec& v) {
  Octonion a = to_oct(v, 0), b = to_oct(v, 8);
  std::vector<Vec> f;
  if (a.is_zero()) {
    for (int k = 0; k < 8; ++k) f.push_back(join(Octonion(), Octonion::unit(k) * b));
    return f;
  }
  Octonion c = a.inverse() * b;
  for (int k = 0; k < 8; ++k) {
    Octonion ea = Octonion::unit(k) * a;
    f.push_back(join(ea, ea * c));
  }
  return f;
}

// R(W,v)v for arbitrary v in the octonionic model, as a 16x16 matrix in W
Mat oct_jacobi(const Vec& v) {
  const int n = 16;
  Scalar vv = dot(v, v);
  Mat m(n, n);
  if (vv.is_zero()) return m;
  std::vector<Vec> f = cayley_vectors(v);
  // |v|^2 W - <W,v>v + 3(Σ <W,f_k> f_k - <W,v> v)
  for (int i = 0; i < n; ++i) {
    m(i, i) += vv;
    for (int j = 0; j < n; ++j) m(i, j) -= Scalar(4) * v[i] * v[j];
  }
  for (const Vec& fk : f)
    for (int i = 0; i < n; ++i) {
      if (fk[i].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!fk[j].is_zero()) m(i, j) += Scalar(3) * fk[i] * fk[j];
    }
  return m;
}

}  // namespace

Geometry::Geometry(GeometryKind g) : kind_(g) {
  validate(g);
  build_structures();
  build_curvature();
}

Geometry::Geometry(GeometryKind g, const Mat& rot) : kind_(g) {
  validate(g);
  build_structures();
  if (g.tag != Kind::Quaternion) throw DomainError("structure rotation needs quaternionic geometry");
  std::vector<Mat> old = j_;
  for (int i = 0; i < 3; ++i) {
    Mat m(g.n, g.n);
    for (int k = 0; k < 3; ++k) m = m + rot(i, k) * old[k];
    j_[i] = m;
  }
  js_.clear();
  for (const Mat& m : j_) js_.emplace_back(m);
  build_curvature();
}

int Geometry::num_j() const {
  switch (tag()) {
    case Kind::Complex: return 1;
    case Kind::Quaternion: return 3;
    default: return 0;
  }
}

void Geometry::build_structures() {
  int n = kind_.n;
  if (tag() == Kind::Complex) {
    Mat j(n, n);
    int h = n / 2;
    for (int i = 0; i < h; ++i) {
      j(i + h, i) = 1;
      j(i, i + h) = -1;
    }
    j_.push_back(j);
  } else if (tag() == Kind::Quaternion) {
    // left multiplication by i, j, k on each block (1,i,j,k)
    static const int tgt[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[3][4] = {{1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    for (int q = 0; q < 3; ++q) {
      Mat j(n, n);
      for (int blk = 0; blk < n; blk += 4)
        for (int c = 0; c < 4; ++c) j(blk + tgt[q][c], blk + c) = sgn[q][c];
      j_.push_back(j);
    }
  } else if (tag() == Kind::Octonion) {
    j_.push_back(Mat::identity(n));
  }
  for (const Mat& m : j_) js_.emplace_back(m);
}

void Geometry::build_curvature() {
  int n = kind_.n;
  r_.assign(static_cast<size_t>(n) * n * n * n, mpq_class(0));
  auto put = [&](int a, int b, int c, const Vec& w) {
    for (int d = 0; d < n; ++d) r_[((static_cast<size_t>(a) * n + b) * n + c) * n + d] = w[d].re;
  };
  if (tag() != Kind::Octonion) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          put(a, b, c, closed_form(tag(), j_, basis_vec(n, a), basis_vec(n, b), basis_vec(n, c)));
  } else {
    // polarise the Jacobi operator: B(Y,Z)X = R(X,Y)Z + R(X,Z)Y,
    // R(X,Y)Z = (B(Y,Z)X - B(X,Z)Y)/3
    std::vector<Mat> jac(static_cast<size_t>(n));
    for (int b = 0; b < n; ++b) jac[b] = oct_jacobi(basis_vec(n, b));
    std::vector<Mat> bm(static_cast<size_t>(n) * n);
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        Mat m;
        if (b == c) {
          m = Scalar(2) * jac[b];
        } else {
          Vec s = basis_vec(n, b);
          s[c] = 1;
          m = oct_jacobi(s) - jac[b] - jac[c];
        }
        bm[b * n + c] = m;
        bm[c * n + b] = m;
      }
    Scalar third(1, 3);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Vec w(static_cast<size_t>(n));
          for (int d = 0; d < n; ++d) w[d] = (bm[b * n + c](d, a) - bm[a * n + c](d, b)) * third;
          put(a, b, c, w);
        }
  }
  rs_.assign(static_cast<size_t>(n) * n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const mpq_class& v = R(a, b, c, d);
          if (sgn(v) != 0) rs_[a * n + b].push_back({c, d, v});
        }
  rc_.assign(static_cast<size_t>(n) * n, SparseCols());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SparseCols& sc = rc_[a * n + b];
      sc.n = n;
      sc.cols.assign(static_cast<size_t>(n), {});
      for (const CurvEntry& e : rs_[a * n + b]) sc.cols[e.c].emplace_back(e.d, Scalar(e.val));
    }
  // Ric(e_0) = -Σ_i R(e_0,e_i)e_i, read off the e_0 component
  ric_ = 0;
  for (int i = 0; i < n; ++i) ric_ -= R(0, i, i, 0);
}

Vec Geometry::curvature(const Vec& x, const Vec& y, const Vec& z) const {
  int n = this->n();
  Vec out(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    if (x[a].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (y[b].is_zero()) continue;
      Scalar xy = x[a] * y[b];
      for (const CurvEntry& e : R_ab(a, b))
        if (!z[e.c].is_zero()) out[e.d].addmul(xy * z[e.c], Scalar(e.val));
    }
  }
  return out;
}

Vec curvature_apply(const Geometry& g, const Vec& x, const Vec& y, const Vec& z) {
  if (g.tag() == Kind::Octonion)
    throw DomainError("no closed-form curvature for the octonionic model; use curvature_contract");
  return closed_form(g.tag(), g.j_ops(), x, y, z);
}

std::vector<Vec> complete_orthonormal(const std::vector<Vec>& us, int n) {
  Mat q = Mat::identity(n);
  for (size_t k = 0; k < us.size(); ++k) {
    // w = Q^T u_k has zeros in the first k slots; reflect it onto e_k
    Vec w = q.transpose() * us[k];
    Vec d = w;
    d[k] -= 1;
    Scalar dd = dot(d, d);
    if (dd.is_zero()) continue;
    Scalar f = Scalar(-2) / dd;
    Vec qd = q * d;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!qd[i].is_zero() && !d[j].is_zero()) q(i, j).addmul(f * qd[i], d[j]);
  }
  std::vector<Vec> out;
  for (int j = 0; j < n; ++j) out.push_back(q.col(j));
  return out;
}

std::vector<Vec> Geometry::cayley_frame(const Vec& v) const {
  if (tag() != Kind::Octonion) throw DomainError("Cayley frames need the octonionic model");
  return cayley_vectors(v);
}

AdaptedFrame Geometry::adapted_frame(const Vec& v) const {
  if (static_cast<int>(v.size()) != n()) throw DomainError("vector has wrong dimension");
  if (norm2(v) != Scalar(1)) throw DomainError("adapted frame needs an exactly unit vector");
  std::vector<Vec> head;
  if (tag() == Kind::Octonion) {
    head = cayley_vectors(v);
  } else {
    head.push_back(v);
    for (const Mat& j : j_) head.push_back(j * v);
  }
  AdaptedFrame fr;
  fr.v = v;
  fr.y = complete_orthonormal(head, n());
  int r = structure_rank(tag());
  fr.lambda.assign(static_cast<size_t>(n()), 1);
  fr.lambda[0] = 0;
  for (int j = 1; j < r; ++j) fr.lambda[j] = 2;
  return fr;
}

Vec Geometry::curvature_contract(const Vec& v, const Vec& w) const {
  AdaptedFrame fr = adapted_frame(v);
  Vec out(static_cast<size_t>(n()));
  for (int j = 0; j < n(); ++j) {
    Scalar c = dot(w, fr.y[j]);
    if (c.is_zero() || fr.lambda[j] == 0) continue;
    out = axpy(c * Scalar(fr.lambda[j] * fr.lambda[j]), fr.y[j], out);
  }
  return out;
}

RawTensor Geometry::r_circ_raw(const RawTensor& t) const {
  int n = this->n(), k = t.degree();
  if (k < 2) throw std::invalid_argument("R° needs degree >= 2");
  RawTensor out(n, k);
  size_t rest = out.size() / (static_cast<size_t>(n) * n);
  // out(x,y,rest) = -Σ_i Σ_d R(e_i,e_x)e_y [d] T(d,i,rest)
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < n; ++x)
      for (const CurvEntry& e : R_ab(i, x)) {
        Scalar val(-e.val);
        size_t dst = (static_cast<size_t>(x) * n + e.c) * rest;
        size_t src = (static_cast<size_t>(e.d) * n + i) * rest;
        for (size_t r = 0; r < rest; ++r)
          if (!t.flat(src + r).is_zero()) out.flat(dst + r).addmul(val, t.flat(src + r));
      }
  return out;
}

SymTensor Geometry::r_circ(const SymTensor& s) const {
  if (s.degree() != 2) throw std::invalid_argument("r_circ takes a 2-tensor");
  return symmetrize(r_circ_raw(to_raw(s)));
}

SymTensor Geometry::s_ric(const SymTensor& s) const { return Scalar(ric_) * s; }

std::vector<Vec> cayley_line(const Octonion& a, const Octonion& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("Cayley line of (0,0) is undefined");
  return cayley_vectors(join(a, b));
}

}  // namespace rk
