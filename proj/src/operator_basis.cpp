#include "procctl/operator_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace procctl {

OperatorBasis OperatorBasis::gell_mann(int dim) {
  if (dim < 2) throw std::invalid_argument("invalid-dimension: Gell-Mann basis needs dim >= 2");
  const int n = dim;
  std::vector<Mat> elems;
  elems.reserve(static_cast<std::size_t>(n) * n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // symmetric block
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat m = Mat::Zero(n, n);
      m(i, j) = inv_sqrt2;
      m(j, i) = inv_sqrt2;
      elems.push_back(m);
    }
  // antisymmetric block
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat m = Mat::Zero(n, n);
      m(i, j) = cx(0, -inv_sqrt2);
      m(j, i) = cx(0, inv_sqrt2);
      elems.push_back(m);
    }
  // diagonal block: D_l = (sum_{k<=l} |k><k| - l|l><l|) / sqrt(l(l+1)), l = 1..n-1
  for (int l = 1; l < n; ++l) {
    Mat m = Mat::Zero(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int k = 0; k < l; ++k) m(k, k) = s;
    m(l, l) = -static_cast<double>(l) * s;
    elems.push_back(m);
  }
  elems.push_back(Mat::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  return OperatorBasis(n, BasisKind::GellMann, std::move(elems));
}

OperatorBasis OperatorBasis::logical(int dim) {
  if (dim < 2) throw std::invalid_argument("invalid-dimension: logical basis needs dim >= 2");
  std::vector<Mat> elems;
  elems.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Mat m = Mat::Zero(dim, dim);
      m(i, j) = 1.0;
      elems.push_back(m);
    }
  return OperatorBasis(dim, BasisKind::Logical, std::move(elems));
}

double OperatorBasis::orthonormality_error() const {
  double err = 0.0;
  const int nn = size();
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b) {
      cx tr = (elements_[a].adjoint() * elements_[b]).trace();
      cx expect = (a == b) ? cx(1, 0) : cx(0, 0);
      err = std::max(err, std::abs(tr - expect));
    }
  return err;
}

StructureTensor StructureTensor::build(const OperatorBasis& basis) {
  StructureTensor t;
  t.dim = basis.dim();
  const int nn = basis.size();
  t.f.reserve(nn);
  for (int l = 0; l < nn; ++l) {
    Mat fl(nn, nn);
    for (int a = 0; a < nn; ++a) {
      Mat left = basis.element(a).adjoint() * basis.element(l);
      for (int m = 0; m < nn; ++m) fl(a, m) = (left * basis.element(m)).trace();
    }
    t.f.push_back(std::move(fl));
  }
  return t;
}

Mat lift_operator(const Mat& y, const OperatorBasis& basis) {
  const int n = basis.dim();
  if (y.rows() != n || y.cols() != n)
    throw std::invalid_argument("dimension-error: operator shape does not match basis dim");
  const int nn = basis.size();
  Mat out(nn, nn);
  for (int m = 0; m < nn; ++m) {
    Mat left = basis.element(m).adjoint() * y;
    for (int v = 0; v < nn; ++v) out(m, v) = (left * basis.element(v)).trace();
  }
  return out;
}

Mat basis_change(const OperatorBasis& from, const OperatorBasis& to) {
  if (from.dim() != to.dim())
    throw std::invalid_argument("dimension-error: basis dims differ");
  const int nn = from.size();
  Mat s(nn, nn);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b)
      s(a, b) = (from.element(a).adjoint() * to.element(b)).trace();
  return s;
}

std::string to_string(BasisKind kind) {
  return kind == BasisKind::GellMann ? "gell-mann" : "logical";
}

BasisKind basis_kind_from_string(const std::string& s) {
  if (s == "gell-mann") return BasisKind::GellMann;
  if (s == "logical") return BasisKind::Logical;
  throw std::invalid_argument("unknown basis kind: " + s);
}

} // namespace procctl
