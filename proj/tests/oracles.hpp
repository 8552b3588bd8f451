#pragma once
// brute-force reference computations for the tests: plain index loops over dense
// arrays, written from the defining formulas rather than from the library's algebra
#include <functional>

#include "rigiditykit/jet.hpp"

namespace oracle {

using rk::Scalar;
using rk::SymTensor;
using rk::Vec;

// entry-by-entry value of a k-tensor on a 0-based index tuple
using Entry = std::function<Scalar(const std::vector<int>&)>;

// symmetrisation by averaging over all k! orderings of each sorted tuple
SymTensor symmetrize(int n, int k, const Entry& f);

// curvature from the textbook closed forms, sign flipped so that R(w,v)v has
// eigenvalues 0, 1, 4 (real/complex/quaternion only)
Vec curvature(const rk::Geometry& g, const Vec& x, const Vec& y, const Vec& z);

// the four displayed formulas for Q, with every operator expanded into index sums
SymTensor q(const rk::TensorJet& s);

// ∇*∇S from level 2, tr S, and the metric inner product of two 2-tensors with 1/2! weight
SymTensor rough_laplacian(const rk::TensorJet& s);
Scalar trace2(const SymTensor& s);

// E over the unit sphere of v^α with the normalised measure:
// Π (α_i - 1)!! / (n (n+2) ... (n + |α| - 2)), zero if some α_i is odd
Scalar sphere_moment(int n, const std::vector<int>& alpha);

}  // namespace oracle
