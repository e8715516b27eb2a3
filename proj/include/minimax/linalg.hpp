#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "minimax/errors.hpp"

namespace minimax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Throws ArgumentError if v contains NaN or Inf.
void require_finite(const Vector& v, const std::string& what);
void require_finite(const Matrix& m, const std::string& what);

/// Throws ArgumentError unless |M_ij - M_ji| <= 1e-12 * max(1, |M_ij|).
void require_symmetric(const Matrix& m, const std::string& what);

/// Matrix-free linear map with an explicit transpose.
struct LinearOperator {
  Index domain_dim = 0;
  Index codomain_dim = 0;
  std::function<Vector(const Vector&)> apply;
  std::function<Vector(const Vector&)> apply_transpose;

  static LinearOperator from_matrix(const Matrix& m);
};

struct CgResult {
  Vector solution;
  int iterations = 0;
  double final_residual_norm = 0.0;  // of the normal equations, ||A'(Ax-b)||
  bool converged = false;
};

/// Least-squares solve of A x = b by conjugate gradient on the normal
/// equations A'A x = A'b. Matrix-free: one apply and one apply_transpose per
/// iteration. Stops at max_iter or when ||A'(Ax-b)|| <= tol; with tol = 0 it
/// runs the full budget unless the residual vanishes exactly.
CgResult cg_normal_solve(const LinearOperator& a, const Vector& b,
                         int max_iter, double tol);

/// All eigenvalues of a symmetric matrix, ascending.
Vector eig_symmetric(const Matrix& m);

/// All eigenvalues of a square real matrix (dense Schur via Hessenberg
/// reduction + shifted QR).
std::vector<std::complex<double>> eig_general(const Matrix& m);

/// Max eigenvalue modulus of a square matrix.
double spectral_radius(const Matrix& m);

/// Inverse of [A B; C D] assembled blockwise from the Schur complement
/// S = A - B D^{-1} C:
///
///   [ S^{-1}            -S^{-1} B D^{-1}                ]
///   [ -D^{-1} C S^{-1}   D^{-1} + D^{-1} C S^{-1} B D^{-1} ]
///
/// Throws SingularError naming "D" or "S" when a pivot falls below
/// 1e-12 * scale.
Matrix block_inverse(const Matrix& a, const Matrix& b, const Matrix& c,
                     const Matrix& d);

/// Direct solve M x = b by partial-pivot LU. Verification oracle for the CG
/// paths.
Vector dense_solve(const Matrix& m, const Vector& b);

}  // namespace minimax
