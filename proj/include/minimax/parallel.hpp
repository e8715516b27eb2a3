#pragma once

#include <Eigen/Core>
#include <cstddef>

namespace minimax {

// Fixed block size for the deterministic reduction. The block partition
// depends only on the sample count, never on the thread count, so sums are
// bitwise identical for any OMP_NUM_THREADS (and with OpenMP disabled).
inline constexpr std::ptrdiff_t kReductionBlock = 1024;

/// Deterministic data-parallel sum of per-sample contributions.
///
/// `add(i, acc)` must add sample i's contribution into `acc` (a dim-vector).
/// Samples are accumulated serially inside fixed 1024-wide blocks; blocks run
/// in parallel and their partial sums are combined in index order.
template <typename AddSample>
Eigen::VectorXd blocked_sum(std::ptrdiff_t count, Eigen::Index dim,
                            AddSample&& add) {
  if (count <= 0) return Eigen::VectorXd::Zero(dim);
  const std::ptrdiff_t nblocks =
      (count + kReductionBlock - 1) / kReductionBlock;
  Eigen::MatrixXd partials = Eigen::MatrixXd::Zero(dim, nblocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
    const std::ptrdiff_t lo = b * kReductionBlock;
    const std::ptrdiff_t hi = std::min(lo + kReductionBlock, count);
    Eigen::Ref<Eigen::VectorXd> acc = partials.col(b);
    for (std::ptrdiff_t i = lo; i < hi; ++i) add(i, acc);
  }
  Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) total += partials.col(b);
  return total;
}

/// Serial reference for blocked_sum: one plain left-to-right pass.
/// Kept for tests and the kernel benchmark.
template <typename AddSample>
Eigen::VectorXd serial_sum(std::ptrdiff_t count, Eigen::Index dim,
                           AddSample&& add) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
  Eigen::Ref<Eigen::VectorXd> acc = total;
  for (std::ptrdiff_t i = 0; i < count; ++i) add(i, acc);
  return total;
}

}  // namespace minimax
