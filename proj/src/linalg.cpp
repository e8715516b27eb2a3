#include "minimax/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace minimax {

void require_finite(const Vector& v, const std::string& what) {
  if (!v.allFinite())
    throw ArgumentError(what + ": non-finite entries");
}

void require_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite())
    throw ArgumentError(what + ": non-finite entries");
}

void require_symmetric(const Matrix& m, const std::string& what) {
  if (m.rows() != m.cols())
    throw ArgumentError(what + ": not square");
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j) {
      const double tol = 1e-12 * std::max(1.0, std::abs(m(i, j)));
      if (std::abs(m(i, j) - m(j, i)) > tol)
        throw ArgumentError(what + ": asymmetry beyond tolerance at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

LinearOperator LinearOperator::from_matrix(const Matrix& m) {
  LinearOperator op;
  op.domain_dim = m.cols();
  op.codomain_dim = m.rows();
  op.apply = [m](const Vector& v) -> Vector { return m * v; };
  op.apply_transpose = [m](const Vector& v) -> Vector {
    return m.transpose() * v;
  };
  return op;
}

CgResult cg_normal_solve(const LinearOperator& a, const Vector& b,
                         int max_iter, double tol) {
  if (a.domain_dim != a.codomain_dim || a.domain_dim != b.size())
    throw ArgumentError("cg_normal_solve: dimension mismatch");
  if (max_iter < 1) throw ArgumentError("cg_normal_solve: max_iter < 1");
  if (tol < 0) throw ArgumentError("cg_normal_solve: negative tol");
  require_finite(b, "cg_normal_solve rhs");

  // CGLS recurrence: r tracks b - A x, s = A'r the normal-equation residual.
  CgResult out;
  out.solution = Vector::Zero(b.size());
  Vector r = b;
  Vector s = a.apply_transpose(r);
  Vector p = s;
  double gamma = s.squaredNorm();
  out.final_residual_norm = std::sqrt(gamma);
  if (out.final_residual_norm <= tol) {
    out.converged = true;
    return out;
  }
  for (int it = 1; it <= max_iter; ++it) {
    const Vector q = a.apply(p);
    const double qq = q.squaredNorm();
    if (qq == 0.0) {  // p in the null space of A; cannot make progress
      out.iterations = it;
      break;
    }
    const double alpha = gamma / qq;
    out.solution += alpha * p;
    r -= alpha * q;
    s = a.apply_transpose(r);
    const double gamma_next = s.squaredNorm();
    if (!std::isfinite(gamma_next) || !out.solution.allFinite())
      throw NumericalError("cg_normal_solve: NaN at iteration " +
                               std::to_string(it),
                           it);
    out.iterations = it;
    out.final_residual_norm = std::sqrt(gamma_next);
    if (out.final_residual_norm <= tol) break;
    p = s + (gamma_next / gamma) * p;
    gamma = gamma_next;
  }
  out.converged = out.final_residual_norm <= tol;
  return out;
}

Vector eig_symmetric(const Matrix& m) {
  require_finite(m, "eig_symmetric");
  require_symmetric(m, "eig_symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("eig_symmetric: iteration failed", -1);
  return es.eigenvalues();  // ascending
}

std::vector<std::complex<double>> eig_general(const Matrix& m) {
  require_finite(m, "eig_general");
  if (m.rows() != m.cols()) throw ArgumentError("eig_general: not square");
  Eigen::EigenSolver<Matrix> es;
  es.setMaxIterations(static_cast<Index>(100 * std::max<Index>(m.rows(), 1)));
  es.compute(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("eig_general: QR iteration did not converge", -1);
  std::vector<std::complex<double>> out(m.rows());
  for (Index i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()[i];
  return out;
}

double spectral_radius(const Matrix& m) {
  double rho = 0.0;
  for (const auto& ev : eig_general(m)) rho = std::max(rho, std::abs(ev));
  return rho;
}

namespace {

// Partial-pivot LU whose smallest pivot is checked against 1e-12 * scale.
Eigen::PartialPivLU<Matrix> checked_lu(const Matrix& m,
                                       const std::string& block) {
  Eigen::PartialPivLU<Matrix> lu(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < 1e-12 * scale)
    throw SingularError("singular block " + block + " (pivot " +
                            std::to_string(min_pivot) + ")",
                        block);
  return lu;
}

}  // namespace

Matrix block_inverse(const Matrix& a, const Matrix& b, const Matrix& c,
                     const Matrix& d) {
  const Index n = a.rows(), m = d.rows();
  if (a.cols() != n || d.cols() != m || b.rows() != n || b.cols() != m ||
      c.rows() != m || c.cols() != n)
    throw ArgumentError("block_inverse: blocks not conformable");

  const auto lu_d = checked_lu(d, "D");
  const Matrix d_inv = lu_d.inverse();
  const Matrix s = a - b * d_inv * c;
  const auto lu_s = checked_lu(s, "S");
  const Matrix s_inv = lu_s.inverse();

  Matrix out(n + m, n + m);
  out.topLeftCorner(n, n) = s_inv;
  out.topRightCorner(n, m) = -s_inv * b * d_inv;
  out.bottomLeftCorner(m, n) = -d_inv * c * s_inv;
  out.bottomRightCorner(m, m) = d_inv + d_inv * c * s_inv * b * d_inv;
  return out;
}

Vector dense_solve(const Matrix& m, const Vector& b) {
  if (m.rows() != m.cols() || m.rows() != b.size())
    throw ArgumentError("dense_solve: dimension mismatch");
  require_finite(m, "dense_solve matrix");
  require_finite(b, "dense_solve rhs");
  const auto lu = checked_lu(m, "M");
  return lu.solve(b);
}

}  // namespace minimax
