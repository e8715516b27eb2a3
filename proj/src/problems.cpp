#include "minimax/problems.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "minimax/parallel.hpp"
#include "minimax/rng.hpp"

namespace minimax {

namespace {

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double log_sigmoid(double t) {
  // log(1 - sigmoid(t)) is log_sigmoid(-t).
  if (t >= 0) return -std::log1p(std::exp(-t));
  return t - std::log1p(std::exp(t));
}

double dsigmoid(double t) {
  const double s = sigmoid(t);
  return s * (1.0 - s);
}

using Matrix2 = Eigen::Matrix2d;
using Vector2 = Eigen::Vector2d;

Matrix2 unvec2(const Vector& v) {
  return Eigen::Map<const Matrix2>(v.data());  // column-major
}

Vector vec2(const Matrix2& m) {
  return Eigen::Map<const Vector>(m.data(), 4);
}

// 2 x N matrix of independent samples with diagonal covariance; column i is
// sample i. Draw order (sample-major) is part of the dataset contract.
Matrix sample_columns(GaussianSampler& rng, const Vector& sigma_diag,
                      std::ptrdiff_t count) {
  const Vector scale = sigma_diag.cwiseSqrt();
  Matrix out(sigma_diag.size(), count);
  for (std::ptrdiff_t i = 0; i < count; ++i)
    for (Index r = 0; r < sigma_diag.size(); ++r)
      out(r, i) = scale[r] * rng.next();
  return out;
}

void check_point(const Point& z, Index n, Index m, const std::string& who) {
  if (z.x.size() != n || z.y.size() != m)
    throw ArgumentError(who + ": point dimension mismatch");
  require_finite(z.x, who + " x");
  require_finite(z.y, who + " y");
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadraticMinimax

QuadraticMinimax::QuadraticMinimax(Matrix a, Matrix b, Matrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  require_symmetric(a_, "quadratic A");
  require_symmetric(b_, "quadratic B");
  if (c_.rows() != a_.rows() || c_.cols() != b_.rows())
    throw ArgumentError("quadratic C: wrong shape");
  if (eig_symmetric(b_).maxCoeff() >= 0)
    throw ArgumentError("quadratic B must be negative definite");
  const Matrix schur = a_ - c_ * b_.lu().solve(c_.transpose());
  if (eig_symmetric(0.5 * (schur + schur.transpose())).minCoeff() <= 0)
    throw ArgumentError(
        "quadratic A - C B^{-1} C' must be positive definite");
}

double QuadraticMinimax::value(const Point& z) const {
  check_point(z, leader_dim(), follower_dim(), name());
  return 0.5 * z.x.dot(a_ * z.x) + 0.5 * z.y.dot(b_ * z.y) +
         z.x.dot(c_ * z.y);
}

Vector QuadraticMinimax::grad_x(const Point& z) const {
  check_point(z, leader_dim(), follower_dim(), name());
  return a_ * z.x + c_ * z.y;
}

Vector QuadraticMinimax::grad_y(const Point& z) const {
  check_point(z, leader_dim(), follower_dim(), name());
  return b_ * z.y + c_.transpose() * z.x;
}

Vector QuadraticMinimax::hvp_xx(const Point&, const Vector& v) const {
  return a_ * v;
}
Vector QuadraticMinimax::hvp_xy(const Point&, const Vector& v) const {
  return c_ * v;
}
Vector QuadraticMinimax::hvp_yx(const Point&, const Vector& v) const {
  return c_.transpose() * v;
}
Vector QuadraticMinimax::hvp_yy(const Point&, const Vector& v) const {
  return b_ * v;
}

std::optional<Point> QuadraticMinimax::known_solution() const {
  return Point{Vector::Zero(leader_dim()), Vector::Zero(follower_dim())};
}

QuadraticMinimax make_q1() {
  Matrix a(1, 1), b(1, 1), c(1, 1);
  a << 4;
  b << -2;
  c << 2;
  return QuadraticMinimax(a, b, c);
}

// ---------------------------------------------------------------------------
// SyntheticQuartic

double SyntheticQuartic::value(const Point& z) const {
  check_point(z, 2, 2, name());
  const double x1 = z.x[0], x2 = z.x[1], y1 = z.y[0], y2 = z.y[1];
  return -2.5 * x1 * x1 - 0.025 * x2 * x2 - 0.5 * y1 * y1 - 0.05 * y2 * y2 +
         x1 * y2 + x2 * y1 - 0.01 * (std::pow(y1, 4) + std::pow(y2, 4)) +
         0.3 * std::pow(x1, 4) + 0.2 * std::pow(x2, 4) - x1 * x1 * x1 * y2;
}

Vector SyntheticQuartic::grad_x(const Point& z) const {
  check_point(z, 2, 2, name());
  const double x1 = z.x[0], x2 = z.x[1], y1 = z.y[0], y2 = z.y[1];
  Vector g(2);
  g[0] = -5.0 * x1 + y2 + 1.2 * x1 * x1 * x1 - 3.0 * x1 * x1 * y2;
  g[1] = -0.05 * x2 + y1 + 0.8 * x2 * x2 * x2;
  return g;
}

Vector SyntheticQuartic::grad_y(const Point& z) const {
  check_point(z, 2, 2, name());
  const double x1 = z.x[0], x2 = z.x[1], y1 = z.y[0], y2 = z.y[1];
  Vector g(2);
  g[0] = -y1 + x2 - 0.04 * y1 * y1 * y1;
  g[1] = -0.1 * y2 + x1 - 0.04 * y2 * y2 * y2 - x1 * x1 * x1;
  return g;
}

Vector SyntheticQuartic::hvp_xx(const Point& z, const Vector& v) const {
  const double x1 = z.x[0], x2 = z.x[1], y2 = z.y[1];
  Vector out(2);
  out[0] = (-5.0 + 3.6 * x1 * x1 - 6.0 * x1 * y2) * v[0];
  out[1] = (-0.05 + 2.4 * x2 * x2) * v[1];
  return out;
}

Vector SyntheticQuartic::hvp_xy(const Point& z, const Vector& v) const {
  const double x1 = z.x[0];
  Vector out(2);
  out[0] = (1.0 - 3.0 * x1 * x1) * v[1];
  out[1] = v[0];
  return out;
}

Vector SyntheticQuartic::hvp_yx(const Point& z, const Vector& v) const {
  const double x1 = z.x[0];
  Vector out(2);
  out[0] = v[1];
  out[1] = (1.0 - 3.0 * x1 * x1) * v[0];
  return out;
}

Vector SyntheticQuartic::hvp_yy(const Point& z, const Vector& v) const {
  const double y1 = z.y[0], y2 = z.y[1];
  Vector out(2);
  out[0] = (-1.0 - 0.12 * y1 * y1) * v[0];
  out[1] = (-0.1 - 0.12 * y2 * y2) * v[1];
  return out;
}

std::optional<Point> SyntheticQuartic::known_solution() const {
  return Point{Vector::Zero(2), Vector::Zero(2)};
}

// ---------------------------------------------------------------------------
// GaussianMeanGAN

GaussianMeanGAN::GaussianMeanGAN(Vector sigma_diag, std::ptrdiff_t n_samples,
                                 std::uint64_t seed)
    : sigma_diag_(std::move(sigma_diag)), n_(n_samples) {
  if (sigma_diag_.size() != 2 || sigma_diag_.minCoeff() <= 0)
    throw ArgumentError("gaussian_mean: sigma must be a positive 2-diagonal");
  if (n_ < 1) throw ArgumentError("gaussian_mean: need at least one sample");
  GaussianSampler rng(seed);
  data_ = sample_columns(rng, sigma_diag_, n_);
  latents_ = sample_columns(rng, sigma_diag_, n_);
}

Vector GaussianMeanGAN::reduce(
    Eigen::Index dim,
    const std::function<void(std::ptrdiff_t, Eigen::Ref<Vector>)>& add) const {
  return serial_ ? serial_sum(n_, dim, add) : blocked_sum(n_, dim, add);
}

double GaussianMeanGAN::value(const Point& z) const {
  check_point(z, 2, 2, name());
  const Vector2 eta = z.x, omega = z.y;
  const Vector acc =
      reduce(1, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        a[0] += log_sigmoid(omega.dot(data_.col(i))) +
                log_sigmoid(-omega.dot(latents_.col(i) + eta));
      });
  return acc[0] / static_cast<double>(n_);
}

Vector GaussianMeanGAN::grad_x(const Point& z) const {
  check_point(z, 2, 2, name());
  const Vector2 eta = z.x, omega = z.y;
  const Vector acc =
      reduce(1, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        a[0] += sigmoid(omega.dot(latents_.col(i) + eta));
      });
  return -(acc[0] / static_cast<double>(n_)) * omega;
}

Vector GaussianMeanGAN::grad_y(const Point& z) const {
  check_point(z, 2, 2, name());
  const Vector2 eta = z.x, omega = z.y;
  const Vector acc =
      reduce(2, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        const Vector2 fake = latents_.col(i) + eta;
        a += (1.0 - sigmoid(omega.dot(data_.col(i)))) * data_.col(i) -
             sigmoid(omega.dot(fake)) * fake;
      });
  return acc / static_cast<double>(n_);
}

Vector GaussianMeanGAN::hvp_xx(const Point& z, const Vector& v) const {
  check_point(z, 2, 2, name());
  const Vector2 eta = z.x, omega = z.y;
  const Vector acc =
      reduce(1, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        a[0] += dsigmoid(omega.dot(latents_.col(i) + eta));
      });
  return -(acc[0] / static_cast<double>(n_)) * omega.dot(v) * omega;
}

Vector GaussianMeanGAN::hvp_xy(const Point& z, const Vector& v) const {
  check_point(z, 2, 2, name());
  const Vector2 eta = z.x, omega = z.y;
  // acc = (sum_i s'_i <fake_i, v>, sum_i s_i)
  const Vector acc =
      reduce(2, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        const Vector2 fake = latents_.col(i) + eta;
        const double t = omega.dot(fake);
        a[0] += dsigmoid(t) * fake.dot(v);
        a[1] += sigmoid(t);
      });
  return -(acc[0] * omega + acc[1] * v) / static_cast<double>(n_);
}

Vector GaussianMeanGAN::hvp_yx(const Point& z, const Vector& v) const {
  check_point(z, 2, 2, name());
  const Vector2 eta = z.x, omega = z.y;
  // acc = (sum_i s'_i fake_i, sum_i s_i)
  const Vector acc =
      reduce(3, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        const Vector2 fake = latents_.col(i) + eta;
        const double t = omega.dot(fake);
        a.head(2) += dsigmoid(t) * fake;
        a[2] += sigmoid(t);
      });
  return -(omega.dot(v) * acc.head(2) + acc[2] * v) /
         static_cast<double>(n_);
}

Vector GaussianMeanGAN::hvp_yy(const Point& z, const Vector& v) const {
  check_point(z, 2, 2, name());
  const Vector2 eta = z.x, omega = z.y;
  const Vector acc =
      reduce(2, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        const Vector2 real = data_.col(i);
        const Vector2 fake = latents_.col(i) + eta;
        a += dsigmoid(omega.dot(real)) * real.dot(v) * real +
             dsigmoid(omega.dot(fake)) * fake.dot(v) * fake;
      });
  return -acc / static_cast<double>(n_);
}

std::optional<Point> GaussianMeanGAN::known_solution() const {
  return Point{Vector::Zero(2), Vector::Zero(2)};
}

PopulationHessians population_hessians_gaussian_mean(const Matrix& sigma) {
  require_symmetric(sigma, "population sigma");
  PopulationHessians out;
  out.eta_eta = Matrix::Zero(sigma.rows(), sigma.cols());
  out.omega_omega = -0.5 * sigma;
  out.eta_omega = -0.5 * Matrix::Identity(sigma.rows(), sigma.cols());
  return out;
}

// ---------------------------------------------------------------------------
// GaussianCovarianceGAN

GaussianCovarianceGAN::GaussianCovarianceGAN(std::ptrdiff_t n_samples,
                                             std::uint64_t seed)
    : n_(n_samples) {
  if (n_ < 1)
    throw ArgumentError("gaussian_covariance: need at least one sample");
  sigma_diag_ = Vector(2);
  sigma_diag_ << 1.0, 0.04;
  GaussianSampler rng(seed);
  data_ = sample_columns(rng, sigma_diag_, n_);
  latents_ = sample_columns(rng, Vector::Ones(2), n_);
}

Vector GaussianCovarianceGAN::reduce(
    Eigen::Index dim,
    const std::function<void(std::ptrdiff_t, Eigen::Ref<Vector>)>& add) const {
  return serial_ ? serial_sum(n_, dim, add) : blocked_sum(n_, dim, add);
}

double GaussianCovarianceGAN::value(const Point& z) const {
  check_point(z, 4, 4, name());
  const Matrix2 v = unvec2(z.x), w = unvec2(z.y);
  const Vector acc =
      reduce(1, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        const Vector2 x = data_.col(i);
        const Vector2 u = v * latents_.col(i);
        a[0] += log_sigmoid(x.dot(w * x)) + log_sigmoid(-u.dot(w * u));
      });
  return acc[0] / static_cast<double>(n_) -
         kRegularization * w.squaredNorm();
}

Vector GaussianCovarianceGAN::grad_x(const Point& z) const {
  check_point(z, 4, 4, name());
  const Matrix2 v = unvec2(z.x), w = unvec2(z.y);
  // sum_i s(t_i) u_i z_i'; the constant (W + W') factors out of the sum.
  const Vector acc = reduce(4, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const Vector2 zi = latents_.col(i);
    const Vector2 u = v * zi;
    const Matrix2 contrib = sigmoid(u.dot(w * u)) * u * zi.transpose();
    a += vec2(contrib);
  });
  const Matrix2 m = unvec2(acc);
  return vec2(Matrix2(-(w + w.transpose()) * m / static_cast<double>(n_)));
}

Vector GaussianCovarianceGAN::grad_y(const Point& z) const {
  check_point(z, 4, 4, name());
  const Matrix2 v = unvec2(z.x), w = unvec2(z.y);
  const Vector acc = reduce(4, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const Vector2 x = data_.col(i);
    const Vector2 u = v * latents_.col(i);
    const Matrix2 contrib =
        (1.0 - sigmoid(x.dot(w * x))) * x * x.transpose() -
        sigmoid(u.dot(w * u)) * u * u.transpose();
    a += vec2(contrib);
  });
  return vec2(
      Matrix2(unvec2(acc) / static_cast<double>(n_) - 2 * kRegularization * w));
}

Vector GaussianCovarianceGAN::hvp_xx(const Point& z, const Vector& dv) const {
  check_point(z, 4, 4, name());
  const Matrix2 v = unvec2(z.x), w = unvec2(z.y);
  const Matrix2 vdot = unvec2(dv);
  const Matrix2 wsym = w + w.transpose();
  const Vector acc = reduce(4, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const Vector2 zi = latents_.col(i);
    const Vector2 u = v * zi;
    const Vector2 udot = vdot * zi;
    const double t = u.dot(w * u);
    const double tdot = udot.dot(wsym * u);
    const Matrix2 contrib =
        (dsigmoid(t) * tdot * u + sigmoid(t) * udot) * zi.transpose();
    a += vec2(contrib);
  });
  return vec2(Matrix2(-wsym * unvec2(acc) / static_cast<double>(n_)));
}

Vector GaussianCovarianceGAN::hvp_xy(const Point& z, const Vector& dw) const {
  check_point(z, 4, 4, name());
  const Matrix2 v = unvec2(z.x), w = unvec2(z.y);
  const Matrix2 wdot = unvec2(dw);
  const Vector acc = reduce(8, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const Vector2 zi = latents_.col(i);
    const Vector2 u = v * zi;
    const double t = u.dot(w * u);
    const double tdot = u.dot(wdot * u);
    const Matrix2 uz = u * zi.transpose();
    a.head(4) += vec2(Matrix2(dsigmoid(t) * tdot * uz));
    a.tail(4) += vec2(Matrix2(sigmoid(t) * uz));
  });
  const Matrix2 a1 = unvec2(acc.head(4));
  const Matrix2 a2 = unvec2(acc.tail(4));
  return vec2(Matrix2(-((w + w.transpose()) * a1 +
                        (wdot + wdot.transpose()) * a2) /
                      static_cast<double>(n_)));
}

Vector GaussianCovarianceGAN::hvp_yx(const Point& z, const Vector& dv) const {
  check_point(z, 4, 4, name());
  const Matrix2 v = unvec2(z.x), w = unvec2(z.y);
  const Matrix2 vdot = unvec2(dv);
  const Matrix2 wsym = w + w.transpose();
  const Vector acc = reduce(4, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const Vector2 zi = latents_.col(i);
    const Vector2 u = v * zi;
    const Vector2 udot = vdot * zi;
    const double t = u.dot(w * u);
    const double tdot = udot.dot(wsym * u);
    const Matrix2 contrib =
        dsigmoid(t) * tdot * u * u.transpose() +
        sigmoid(t) * (udot * u.transpose() + u * udot.transpose());
    a += vec2(contrib);
  });
  return vec2(Matrix2(-unvec2(acc) / static_cast<double>(n_)));
}

Vector GaussianCovarianceGAN::hvp_yy(const Point& z, const Vector& dw) const {
  check_point(z, 4, 4, name());
  const Matrix2 v = unvec2(z.x), w = unvec2(z.y);
  const Matrix2 wdot = unvec2(dw);
  const Vector acc = reduce(4, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const Vector2 x = data_.col(i);
    const Vector2 u = v * latents_.col(i);
    const Matrix2 contrib =
        dsigmoid(x.dot(w * x)) * x.dot(wdot * x) * x * x.transpose() +
        dsigmoid(u.dot(w * u)) * u.dot(wdot * u) * u * u.transpose();
    a += vec2(contrib);
  });
  return vec2(Matrix2(-unvec2(acc) / static_cast<double>(n_) -
                      2 * kRegularization * wdot));
}

// ---------------------------------------------------------------------------
// SinProduct

double SinProduct::value(const Point& z) const {
  check_point(z, 1, 1, name());
  return (z.x[0] * z.x[0] + 1.0) * (2.0 + std::sin(z.y[0]));
}

Vector SinProduct::grad_x(const Point& z) const {
  check_point(z, 1, 1, name());
  return Vector::Constant(1, 2.0 * z.x[0] * (2.0 + std::sin(z.y[0])));
}

Vector SinProduct::grad_y(const Point& z) const {
  check_point(z, 1, 1, name());
  return Vector::Constant(1, (z.x[0] * z.x[0] + 1.0) * std::cos(z.y[0]));
}

Vector SinProduct::hvp_xx(const Point& z, const Vector& v) const {
  return Vector::Constant(1, 2.0 * (2.0 + std::sin(z.y[0])) * v[0]);
}
Vector SinProduct::hvp_xy(const Point& z, const Vector& v) const {
  return Vector::Constant(1, 2.0 * z.x[0] * std::cos(z.y[0]) * v[0]);
}
Vector SinProduct::hvp_yx(const Point& z, const Vector& v) const {
  return Vector::Constant(1, 2.0 * z.x[0] * std::cos(z.y[0]) * v[0]);
}
Vector SinProduct::hvp_yy(const Point& z, const Vector& v) const {
  return Vector::Constant(
      1, -(z.x[0] * z.x[0] + 1.0) * std::sin(z.y[0]) * v[0]);
}

std::optional<Point> SinProduct::known_solution() const {
  return Point{Vector::Zero(1),
               Vector::Constant(1, std::numbers::pi / 2.0)};
}

Point SinProduct::local_minimum() const {
  return Point{Vector::Zero(1),
               Vector::Constant(1, -std::numbers::pi / 2.0)};
}

// ---------------------------------------------------------------------------
// RobustLeastSquares

RobustLeastSquares::RobustLeastSquares(std::vector<Vector> samples,
                                       Vector targets, double gamma)
    : samples_(std::move(samples)), targets_(std::move(targets)),
      gamma_(gamma) {
  if (samples_.empty()) throw ArgumentError("robust_ls: no samples");
  d_ = samples_[0].size();
  n_ = static_cast<Index>(samples_.size());
  for (const auto& a : samples_)
    if (a.size() != d_) throw ArgumentError("robust_ls: ragged samples");
  if (targets_.size() != n_)
    throw ArgumentError("robust_ls: one target per sample required");
  if (gamma_ <= 0) throw ArgumentError("robust_ls: gamma must be positive");
}

RobustLeastSquares RobustLeastSquares::antipodal_pair(const Vector& a,
                                                      double gamma) {
  return RobustLeastSquares({a, Vector(-a)}, Vector::Ones(2), gamma);
}

Vector RobustLeastSquares::nominal_follower() const {
  Vector y(d_ * n_);
  for (Index i = 0; i < n_; ++i) y.segment(i * d_, d_) = samples_[i];
  return y;
}

double RobustLeastSquares::value(const Point& z) const {
  check_point(z, leader_dim(), follower_dim(), name());
  const Vector acc =
      blocked_sum(n_, 1, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
        const auto wi = z.y.segment(i * d_, d_);
        const double r = wi.dot(z.x) - targets_[i];
        a[0] += 0.5 * r * r - gamma_ * (wi - samples_[i]).squaredNorm();
      });
  return acc[0];
}

Vector RobustLeastSquares::grad_x(const Point& z) const {
  check_point(z, leader_dim(), follower_dim(), name());
  return blocked_sum(n_, d_, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const auto wi = z.y.segment(i * d_, d_);
    a += (wi.dot(z.x) - targets_[i]) * wi;
  });
}

Vector RobustLeastSquares::grad_y(const Point& z) const {
  check_point(z, leader_dim(), follower_dim(), name());
  Vector g(d_ * n_);
  for (Index i = 0; i < n_; ++i) {
    const auto wi = z.y.segment(i * d_, d_);
    g.segment(i * d_, d_) = (wi.dot(z.x) - targets_[i]) * z.x -
                            2.0 * gamma_ * (wi - samples_[i]);
  }
  return g;
}

Vector RobustLeastSquares::hvp_xx(const Point& z, const Vector& v) const {
  check_point(z, leader_dim(), follower_dim(), name());
  return blocked_sum(n_, d_, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const auto wi = z.y.segment(i * d_, d_);
    a += wi.dot(v) * wi;
  });
}

Vector RobustLeastSquares::hvp_xy(const Point& z, const Vector& v) const {
  check_point(z, leader_dim(), follower_dim(), name());
  return blocked_sum(n_, d_, [&](std::ptrdiff_t i, Eigen::Ref<Vector> a) {
    const auto wi = z.y.segment(i * d_, d_);
    const auto vi = v.segment(i * d_, d_);
    a += z.x.dot(vi) * wi + (wi.dot(z.x) - targets_[i]) * vi;
  });
}

Vector RobustLeastSquares::hvp_yx(const Point& z, const Vector& v) const {
  check_point(z, leader_dim(), follower_dim(), name());
  Vector out(d_ * n_);
  for (Index i = 0; i < n_; ++i) {
    const auto wi = z.y.segment(i * d_, d_);
    out.segment(i * d_, d_) =
        wi.dot(v) * z.x + (wi.dot(z.x) - targets_[i]) * v;
  }
  return out;
}

Vector RobustLeastSquares::hvp_yy(const Point& z, const Vector& v) const {
  check_point(z, leader_dim(), follower_dim(), name());
  Vector out(d_ * n_);
  for (Index i = 0; i < n_; ++i) {
    const auto vi = v.segment(i * d_, d_);
    out.segment(i * d_, d_) = z.x.dot(vi) * z.x - 2.0 * gamma_ * vi;
  }
  return out;
}

// ---------------------------------------------------------------------------
// CubicMinimaxExample

double CubicMinimaxExample::value(const Point& z) const {
  check_point(z, 1, 1, name());
  const double x = z.x[0], y = z.y[0];
  return -3 * x * x + x * y * y - y * y + 4 * x * y;
}

Vector CubicMinimaxExample::grad_x(const Point& z) const {
  check_point(z, 1, 1, name());
  const double x = z.x[0], y = z.y[0];
  return Vector::Constant(1, -6 * x + y * y + 4 * y);
}

Vector CubicMinimaxExample::grad_y(const Point& z) const {
  check_point(z, 1, 1, name());
  const double x = z.x[0], y = z.y[0];
  return Vector::Constant(1, 2 * x * y - 2 * y + 4 * x);
}

Vector CubicMinimaxExample::hvp_xx(const Point&, const Vector& v) const {
  return Vector::Constant(1, -6.0 * v[0]);
}
Vector CubicMinimaxExample::hvp_xy(const Point& z, const Vector& v) const {
  return Vector::Constant(1, (2 * z.y[0] + 4) * v[0]);
}
Vector CubicMinimaxExample::hvp_yx(const Point& z, const Vector& v) const {
  return Vector::Constant(1, (2 * z.y[0] + 4) * v[0]);
}
Vector CubicMinimaxExample::hvp_yy(const Point& z, const Vector& v) const {
  return Vector::Constant(1, (2 * z.x[0] - 2) * v[0]);
}

std::optional<Point> CubicMinimaxExample::known_solution() const {
  return Point{Vector::Zero(1), Vector::Zero(1)};
}

// ---------------------------------------------------------------------------
// Factory

namespace {

Matrix json_to_matrix(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ConfigError("problem.params." + key + ": expected a nested array");
  Matrix m(j.size(), j[0].size());
  for (Index r = 0; r < m.rows(); ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != m.cols())
      throw ConfigError("problem.params." + key + ": ragged rows");
    for (Index c = 0; c < m.cols(); ++c)
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

void reject_unknown(const nlohmann::json& params,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, unused] : params.items()) {
    (void)unused;
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("problem.params." + key + ": unknown key");
  }
}

}  // namespace

std::unique_ptr<MinimaxOracle> make_problem(const std::string& name,
                                            const nlohmann::json& params,
                                            std::uint64_t seed) {
  if (!params.is_object() && !params.is_null())
    throw ConfigError("problem.params: expected an object");
  const nlohmann::json p =
      params.is_null() ? nlohmann::json::object() : params;

  if (name == "quadratic") {
    reject_unknown(p, {"A", "B", "C"});
    if (!p.contains("A") || !p.contains("B") || !p.contains("C"))
      throw ConfigError("problem.params: quadratic requires A, B, C");
    return std::make_unique<QuadraticMinimax>(json_to_matrix(p["A"], "A"),
                                              json_to_matrix(p["B"], "B"),
                                              json_to_matrix(p["C"], "C"));
  }
  if (name == "quartic") {
    reject_unknown(p, {});
    return std::make_unique<SyntheticQuartic>();
  }
  if (name == "gaussian_mean") {
    reject_unknown(p, {"sigma", "N"});
    Vector sigma = GaussianMeanGAN::well_conditioned_sigma();
    if (p.contains("sigma")) {
      if (p["sigma"].is_string()) {
        const std::string s = p["sigma"].get<std::string>();
        if (s == "well")
          sigma = GaussianMeanGAN::well_conditioned_sigma();
        else if (s == "ill")
          sigma = GaussianMeanGAN::ill_conditioned_sigma();
        else
          throw ConfigError("problem.params.sigma: expected well|ill");
      } else if (p["sigma"].is_array() && p["sigma"].size() == 2) {
        sigma = Vector(2);
        sigma << p["sigma"][0].get<double>(), p["sigma"][1].get<double>();
      } else {
        throw ConfigError("problem.params.sigma: expected well|ill|[d1,d2]");
      }
    }
    const auto n = p.value("N", std::ptrdiff_t{10000});
    return std::make_unique<GaussianMeanGAN>(sigma, n, seed);
  }
  if (name == "gaussian_covariance") {
    reject_unknown(p, {"N"});
    const auto n = p.value("N", std::ptrdiff_t{10000});
    return std::make_unique<GaussianCovarianceGAN>(n, seed);
  }
  if (name == "sin_product") {
    reject_unknown(p, {});
    return std::make_unique<SinProduct>();
  }
  if (name == "robust_ls") {
    reject_unknown(p, {"d", "N", "gamma"});
    const Index d = p.value("d", Index{3});
    const Index n = p.value("N", Index{2});
    const double gamma = p.value("gamma", 10.0);
    if (d < 1 || n < 1)
      throw ConfigError("problem.params: robust_ls needs d >= 1, N >= 1");
    GaussianSampler rng(seed);
    std::vector<Vector> samples;
    samples.reserve(n);
    for (Index i = 0; i < n; ++i) samples.push_back(rng.vector(d));
    return std::make_unique<RobustLeastSquares>(std::move(samples),
                                                rng.vector(n), gamma);
  }
  if (name == "cubic") {
    reject_unknown(p, {});
    return std::make_unique<CubicMinimaxExample>();
  }
  throw ConfigError("problem.name: unknown problem '" + name + "'");
}

}  // namespace minimax
