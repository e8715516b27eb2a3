// Times the dataset-average oracle kernels with the serial reference
// reduction against the blocked OpenMP one. The two paths must agree to
// rounding; the point of the comparison is throughput.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "minimax/problems.hpp"
#include "minimax/rng.hpp"

namespace {

using namespace minimax;

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

template <typename Problem>
void bench_problem(Problem& problem, const Point& z, const std::string& name,
                   int reps) {
  struct Row {
    const char* kernel;
    std::function<double()> eval;
  };
  const Vector vx = Vector::Ones(problem.leader_dim());
  const Vector vy = Vector::Ones(problem.follower_dim());
  const Row rows[] = {
      {"value", [&] { return problem.value(z); }},
      {"grad_y", [&] { return problem.grad_y(z).norm(); }},
      {"hvp_yy", [&] { return problem.hvp_yy(z, vy).norm(); }},
      {"hvp_xy", [&] { return problem.hvp_xy(z, vy).norm(); }},
      {"hvp_yx", [&] { return problem.hvp_yx(z, vx).norm(); }},
  };
  for (const Row& row : rows) {
    volatile double sink = 0;
    problem.use_serial_reference(true);
    const double serial =
        time_ms(reps, [&] { sink = sink + row.eval(); });
    problem.use_serial_reference(false);
    const double blocked =
        time_ms(reps, [&] { sink = sink + row.eval(); });
    std::printf("%-20s %-8s serial %8.3f ms   blocked %8.3f ms   speedup %.2fx\n",
                name.c_str(), row.kernel, serial, blocked,
                serial / blocked);
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::ptrdiff_t n = 200000;
  int reps = 20;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--n" && i + 1 < argc) n = std::atoll(argv[++i]);
    else if (arg == "--reps" && i + 1 < argc) reps = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: bench_kernels [--n samples] [--reps r]\n");
      return 1;
    }
  }
#ifdef _OPENMP
  std::printf("OpenMP threads: %d, samples: %td, reps: %d\n",
              omp_get_max_threads(), n, reps);
#else
  std::printf("OpenMP disabled, samples: %td, reps: %d\n", n, reps);
#endif

  GaussianSampler rng(11);
  {
    GaussianMeanGAN gan(GaussianMeanGAN::ill_conditioned_sigma(), n, 7);
    const Point z{0.1 * rng.vector(2), 0.1 * rng.vector(2)};
    bench_problem(gan, z, "gaussian_mean", reps);
  }
  {
    GaussianCovarianceGAN gan(n, 7);
    Vector x0(4), y0(4);
    x0 << 1.0, 0.05, -0.03, 0.2;  // V near a covariance root
    y0 << 0.01, 0.002, -0.004, 0.03;
    bench_problem(gan, Point{x0, y0}, "gaussian_covariance", reps);
  }
  return 0;
}
