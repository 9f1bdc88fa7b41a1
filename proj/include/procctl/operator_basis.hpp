#pragma once

#include <string>
#include <vector>

#include "procctl/types.hpp"

namespace procctl {

enum class BasisKind { GellMann, Logical };

/// Orthonormal operator basis {C_a} of the N^2-dimensional Liouville space.
///
/// Gell-Mann ordering is fixed: N(N-1)/2 symmetric off-diagonal elements
/// (pairs (i,j), i<j, lexicographic), then the antisymmetric block in the
/// same pair order, then the N-1 diagonal elements, then I/sqrt(N) last.
/// The logical basis is {|i><j|} in row-major (i,j) order.
class OperatorBasis {
public:
  static OperatorBasis gell_mann(int dim);
  static OperatorBasis logical(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); } // N^2
  BasisKind kind() const { return kind_; }
  const Mat& element(int a) const { return elements_[a]; }
  const std::vector<Mat>& elements() const { return elements_; }

  /// max |Tr[C_a^dag C_b] - delta_ab| over all pairs.
  double orthonormality_error() const;

private:
  OperatorBasis(int dim, BasisKind kind, std::vector<Mat> elements)
      : dim_(dim), kind_(kind), elements_(std::move(elements)) {}

  int dim_;
  BasisKind kind_;
  std::vector<Mat> elements_;
};

/// Rank-3 tensor [F_l]_{a,m} = Tr[C_a^dag C_l C_m], stored as N^2 matrices
/// of size N^2 x N^2 (index l selects the matrix).
struct StructureTensor {
  int dim = 0;
  std::vector<Mat> f;

  static StructureTensor build(const OperatorBasis& basis);

  const Mat& operator[](int lambda) const { return f[lambda]; }
};

/// Lift of an N x N operator Y into the Liouville representation,
/// [Y]_{mn} = Tr[C_m^dag Y C_n]. Linear; a *-homomorphism on products.
Mat lift_operator(const Mat& y, const OperatorBasis& basis);

/// Unitary S with S_{a,(i,j)} = Tr[C_a^dag Ctilde_(i,j)] mapping process
/// matrices between bases via chi_to = S^dag chi_from S.
Mat basis_change(const OperatorBasis& from, const OperatorBasis& to);

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& s);

} // namespace procctl
