#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

#include "minimax/oracle.hpp"

namespace minimax {

/// f = x'Ax/2 + y'By/2 + x'Cy with B negative definite and the Schur
/// complement A - C B^{-1} C' positive definite, so the origin is the unique
/// strict local minimax point. All rate theorems are exact here.
class QuadraticMinimax : public MinimaxOracle {
 public:
  QuadraticMinimax(Matrix a, Matrix b, Matrix c);

  Index leader_dim() const override { return a_.rows(); }
  Index follower_dim() const override { return b_.rows(); }
  double value(const Point& z) const override;
  Vector grad_x(const Point& z) const override;
  Vector grad_y(const Point& z) const override;
  Vector hvp_xx(const Point& z, const Vector& v) const override;
  Vector hvp_xy(const Point& z, const Vector& v) const override;
  Vector hvp_yx(const Point& z, const Vector& v) const override;
  Vector hvp_yy(const Point& z, const Vector& v) const override;
  std::string name() const override { return "quadratic"; }
  std::optional<Point> known_solution() const override;

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& c() const { return c_; }

 private:
  Matrix a_, b_, c_;
};

/// The scalar instance f = 2x^2 - y^2 + 2xy (A=4, B=-2, C=2).
QuadraticMinimax make_q1();

/// Fixed 2+2-dimensional quartic with an ill-conditioned follower block:
///   f = x'diag(-2.5,-0.025)x + y'diag(-0.5,-0.05)y + x'[[0,1],[1,0]]y
///       - 0.01(y1^4+y2^4) + 0.3 x1^4 + 0.2 x2^4 - x1^3 y2.
/// Strict local minimax at the origin that is not a saddle point.
class SyntheticQuartic : public MinimaxOracle {
 public:
  Index leader_dim() const override { return 2; }
  Index follower_dim() const override { return 2; }
  double value(const Point& z) const override;
  Vector grad_x(const Point& z) const override;
  Vector grad_y(const Point& z) const override;
  Vector hvp_xx(const Point& z, const Vector& v) const override;
  Vector hvp_xy(const Point& z, const Vector& v) const override;
  Vector hvp_yx(const Point& z, const Vector& v) const override;
  Vector hvp_yy(const Point& z, const Vector& v) const override;
  std::string name() const override { return "quartic"; }
  std::optional<Point> known_solution() const override;
};

/// JS-GAN estimating the mean of N(0, Sigma) with a linear discriminator
/// sigma(w'x) and translation generator z + eta. Leader eta, follower omega,
/// both in R^2; expectations replaced by averages over a dataset of N sample
/// pairs drawn once at construction. Population optimum at the origin.
class GaussianMeanGAN : public MinimaxOracle {
 public:
  GaussianMeanGAN(Vector sigma_diag, std::ptrdiff_t n_samples,
                  std::uint64_t seed);

  static Vector well_conditioned_sigma() { return Vector::Ones(2); }
  static Vector ill_conditioned_sigma() {
    Vector s(2);
    s << 1.0, 0.05;
    return s;
  }

  Index leader_dim() const override { return 2; }
  Index follower_dim() const override { return 2; }
  double value(const Point& z) const override;
  Vector grad_x(const Point& z) const override;
  Vector grad_y(const Point& z) const override;
  Vector hvp_xx(const Point& z, const Vector& v) const override;
  Vector hvp_xy(const Point& z, const Vector& v) const override;
  Vector hvp_yx(const Point& z, const Vector& v) const override;
  Vector hvp_yy(const Point& z, const Vector& v) const override;
  std::string name() const override { return "gaussian_mean"; }
  std::optional<Point> known_solution() const override;
  double solution_tolerance() const override { return 1e-2; }

  const Matrix& data() const { return data_; }
  const Matrix& latents() const { return latents_; }
  Vector sigma_diag() const { return sigma_diag_; }

  /// Evaluate the dataset-average kernels with the serial reference reduction
  /// instead of the blocked parallel one (tests and benchmark only).
  void use_serial_reference(bool on) { serial_ = on; }

 private:
  Vector reduce(Eigen::Index dim,
                const std::function<void(std::ptrdiff_t,
                                         Eigen::Ref<Vector>)>& add) const;
  Vector sigma_diag_;
  std::ptrdiff_t n_;
  Matrix data_;     // 2 x N, x_i ~ N(0, Sigma)
  Matrix latents_;  // 2 x N, z_i ~ N(0, Sigma)
  bool serial_ = false;
};

/// Closed-form Hessian blocks of the population Gaussian-mean game at its
/// optimum: (0, -Sigma/2, -I/2).
struct PopulationHessians {
  Matrix eta_eta;
  Matrix omega_omega;
  Matrix eta_omega;
};
PopulationHessians population_hessians_gaussian_mean(const Matrix& sigma);

/// JS-GAN estimating the covariance diag(1, 0.04) with discriminator
/// sigma(x'Wx) and generator Vz (latents standard normal). Leader vec(V),
/// follower vec(W), column-major, n = m = 4. The follower objective carries
/// an l2 penalty of 1e-5 * ||W||_F^2. The optimum is a manifold (VV' = Sigma),
/// so no reference point is exposed.
class GaussianCovarianceGAN : public MinimaxOracle {
 public:
  GaussianCovarianceGAN(std::ptrdiff_t n_samples, std::uint64_t seed);

  static constexpr double kRegularization = 1e-5;

  Index leader_dim() const override { return 4; }
  Index follower_dim() const override { return 4; }
  double value(const Point& z) const override;
  Vector grad_x(const Point& z) const override;
  Vector grad_y(const Point& z) const override;
  Vector hvp_xx(const Point& z, const Vector& v) const override;
  Vector hvp_xy(const Point& z, const Vector& v) const override;
  Vector hvp_yx(const Point& z, const Vector& v) const override;
  Vector hvp_yy(const Point& z, const Vector& v) const override;
  std::string name() const override { return "gaussian_covariance"; }
  double solution_tolerance() const override { return 1e-2; }

  Vector sigma_diag() const { return sigma_diag_; }
  void use_serial_reference(bool on) { serial_ = on; }

 private:
  Vector reduce(Eigen::Index dim,
                const std::function<void(std::ptrdiff_t,
                                         Eigen::Ref<Vector>)>& add) const;
  Vector sigma_diag_;
  std::ptrdiff_t n_;
  Matrix data_;     // 2 x N, x_i ~ N(0, diag(1, 0.04))
  Matrix latents_;  // 2 x N, z_i ~ N(0, I)
  bool serial_ = false;
};

/// f(x, y) = (x^2 + 1)(2 + sin y): strict local minimax at (0, pi/2) and a
/// plain local minimum at (0, -pi/2) that attracts Newton-type follower
/// updates started nearby.
class SinProduct : public MinimaxOracle {
 public:
  Index leader_dim() const override { return 1; }
  Index follower_dim() const override { return 1; }
  double value(const Point& z) const override;
  Vector grad_x(const Point& z) const override;
  Vector grad_y(const Point& z) const override;
  Vector hvp_xx(const Point& z, const Vector& v) const override;
  Vector hvp_xy(const Point& z, const Vector& v) const override;
  Vector hvp_yx(const Point& z, const Vector& v) const override;
  Vector hvp_yy(const Point& z, const Vector& v) const override;
  std::string name() const override { return "sin_product"; }
  std::optional<Point> known_solution() const override;

  /// The competing stationary point (0, -pi/2).
  Point local_minimum() const;
};

/// Distributionally robust least squares: leader theta in R^d, follower the
/// stacked adversarial samples Omega = (w_1..w_N) in R^{Nd},
///   f = sum_i (w_i'theta - b_i)^2 / 2 - gamma ||w_i - a_i||^2.
/// With N < d the summed theta-Hessian sum_i w_i w_i' is singular, so
/// stationary points can be strict local minimax without being strict local
/// Nash.
class RobustLeastSquares : public MinimaxOracle {
 public:
  RobustLeastSquares(std::vector<Vector> samples, Vector targets,
                     double gamma);

  /// N=2 antipodal samples (a, -a) with unit targets: theta* = 0 with
  /// w_i* = a_i is a closed-form stationary point.
  static RobustLeastSquares antipodal_pair(const Vector& a, double gamma);

  Index leader_dim() const override { return d_; }
  Index follower_dim() const override { return d_ * n_; }
  double value(const Point& z) const override;
  Vector grad_x(const Point& z) const override;
  Vector grad_y(const Point& z) const override;
  Vector hvp_xx(const Point& z, const Vector& v) const override;
  Vector hvp_xy(const Point& z, const Vector& v) const override;
  Vector hvp_yx(const Point& z, const Vector& v) const override;
  Vector hvp_yy(const Point& z, const Vector& v) const override;
  std::string name() const override { return "robust_ls"; }

  double gamma() const { return gamma_; }
  Index sample_count() const { return n_; }
  const Vector& sample(Index i) const { return samples_[i]; }

  /// Follower init that places every adversarial sample on its data point.
  Vector nominal_follower() const;

 private:
  std::vector<Vector> samples_;
  Vector targets_;
  double gamma_;
  Index d_, n_;
};

/// f = -3x^2 + xy^2 - y^2 + 4xy, the 1+1 cubic whose origin is strict local
/// minimax (total curvature 2) but not strict local Nash (xx-curvature -6).
class CubicMinimaxExample : public MinimaxOracle {
 public:
  Index leader_dim() const override { return 1; }
  Index follower_dim() const override { return 1; }
  double value(const Point& z) const override;
  Vector grad_x(const Point& z) const override;
  Vector grad_y(const Point& z) const override;
  Vector hvp_xx(const Point& z, const Vector& v) const override;
  Vector hvp_xy(const Point& z, const Vector& v) const override;
  Vector hvp_yx(const Point& z, const Vector& v) const override;
  Vector hvp_yy(const Point& z, const Vector& v) const override;
  std::string name() const override { return "cubic"; }
  std::optional<Point> known_solution() const override;
};

/// Factory behind the harness config and CLI. Recognized names:
///   quadratic            params: A, B, C (nested arrays)
///   quartic              params: none
///   gaussian_mean        params: sigma ("well" | "ill" | [d1, d2]), N
///   gaussian_covariance  params: N
///   sin_product          params: none
///   robust_ls            params: d, N, gamma
///   cubic                params: none
/// The same seed always reproduces the same dataset bit for bit.
std::unique_ptr<MinimaxOracle> make_problem(const std::string& name,
                                            const nlohmann::json& params,
                                            std::uint64_t seed);

}  // namespace minimax
