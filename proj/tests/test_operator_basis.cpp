#include <doctest.h>

#include <random>

#include "procctl/operator_basis.hpp"

using namespace procctl;

namespace {

Mat random_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cx(d(rng), d(rng));
  return m;
}

} // namespace

TEST_CASE("gell-mann basis for dim 4: 16 matrices, 15 traceless, orthonormal") {
  OperatorBasis b = OperatorBasis::gell_mann(4);
  CHECK(b.size() == 16);
  int traceless = 0;
  for (int a = 0; a < 16; ++a)
    if (std::abs(b.element(a).trace()) < 1e-14) ++traceless;
  CHECK(traceless == 15);
  CHECK(b.element(15).isApprox(Mat::Identity(4, 4) / 2.0, 1e-14)); // I/sqrt(N) last
  CHECK(b.orthonormality_error() < 1e-14);
}

TEST_CASE("gell-mann and logical bases are orthonormal for dims 2..5") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(OperatorBasis::gell_mann(n).orthonormality_error() < 1e-14);
    CHECK(OperatorBasis::logical(n).orthonormality_error() < 1e-14);
  }
}

TEST_CASE("basis construction rejects dim < 2") {
  CHECK_THROWS_AS(OperatorBasis::gell_mann(1), std::invalid_argument);
  CHECK_THROWS_AS(OperatorBasis::logical(0), std::invalid_argument);
}

TEST_CASE("structure tensor entries match brute-force traces (dim 2, sigma_z/sqrt 2)") {
  OperatorBasis b = OperatorBasis::gell_mann(2);
  StructureTensor f = StructureTensor::build(b);
  // diagonal element D_1 = sigma_z / sqrt(2) sits at index 2
  Mat sz(2, 2);
  sz << 1, 0, 0, -1;
  CHECK(b.element(2).isApprox(sz / std::sqrt(2.0), 1e-14));
  for (int a = 0; a < 4; ++a)
    for (int m = 0; m < 4; ++m) {
      cx brute = (b.element(a).adjoint() * (sz / std::sqrt(2.0)) * b.element(m)).trace();
      CHECK(std::abs(f[2](a, m) - brute) < 1e-14);
    }
}

TEST_CASE("expansion identity: sum_l Tr[C_l^dag Y] [F_l]_am = Tr[C_a^dag Y C_m]") {
  std::mt19937 rng(7);
  for (int n : {2, 4}) {
    OperatorBasis b = OperatorBasis::gell_mann(n);
    StructureTensor f = StructureTensor::build(b);
    const int nn = b.size();
    for (int trial = 0; trial < 20; ++trial) {
      Mat y = random_matrix(n, rng);
      std::uniform_int_distribution<int> idx(0, nn - 1);
      int a = idx(rng), m = idx(rng);
      cx lhs = 0;
      for (int l = 0; l < nn; ++l)
        lhs += (b.element(l).adjoint() * y).trace() * f[l](a, m);
      cx rhs = (b.element(a).adjoint() * y * b.element(m)).trace();
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("completeness identity: sum_l conj([F_v]_xl) [F_l]_am = Tr[C_a^dag C_v^dag C_x C_m]") {
  std::mt19937 rng(11);
  for (int n : {2, 4}) {
    OperatorBasis b = OperatorBasis::gell_mann(n);
    StructureTensor f = StructureTensor::build(b);
    const int nn = b.size();
    std::uniform_int_distribution<int> idx(0, nn - 1);
    for (int trial = 0; trial < 20; ++trial) {
      int v = idx(rng), x = idx(rng), a = idx(rng), m = idx(rng);
      cx lhs = 0;
      for (int l = 0; l < nn; ++l) lhs += std::conj(f[v](x, l)) * f[l](a, m);
      cx rhs =
          (b.element(a).adjoint() * b.element(v).adjoint() * b.element(x) * b.element(m))
              .trace();
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("lift_operator is a *-homomorphism") {
  std::mt19937 rng(3);
  OperatorBasis b = OperatorBasis::gell_mann(3);
  Mat x = random_matrix(3, rng), y = random_matrix(3, rng);
  Mat lx = lift_operator(x, b), ly = lift_operator(y, b);
  CHECK((lift_operator(x * y, b) - lx * ly).norm() < 1e-12);
  CHECK((lift_operator(x.adjoint(), b) - lx.adjoint()).norm() < 1e-12);
  CHECK((lift_operator(Mat::Identity(3, 3), b) - Mat::Identity(9, 9)).norm() < 1e-12);
}

TEST_CASE("basis_change is unitary and maps process matrices consistently") {
  OperatorBasis gm = OperatorBasis::gell_mann(4);
  OperatorBasis lb = OperatorBasis::logical(4);
  Mat s = basis_change(gm, lb);
  CHECK((s * s.adjoint() - Mat::Identity(16, 16)).norm() < 1e-12);
  // identity process: chi_gm has 4 at the identity slot; in the logical
  // basis the identity map is chi_(ij),(kl) = delta_ij delta_kl
  Mat chi_gm = Mat::Zero(16, 16);
  chi_gm(15, 15) = 4.0;
  Mat chi_lb = s.adjoint() * chi_gm * s;
  double max_err = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double expect = (i == j && k == l) ? 1.0 : 0.0;
          max_err = std::max(max_err,
                             std::abs(chi_lb(i * 4 + j, k * 4 + l) - expect));
        }
  CHECK(max_err < 1e-12);
}

TEST_CASE("basis kind string round trip") {
  CHECK(basis_kind_from_string(to_string(BasisKind::GellMann)) == BasisKind::GellMann);
  CHECK(basis_kind_from_string(to_string(BasisKind::Logical)) == BasisKind::Logical);
  CHECK_THROWS(basis_kind_from_string("nope"));
}
