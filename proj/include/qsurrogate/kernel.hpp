#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qsurrogate/grid.hpp"
#include "qsurrogate/oracle.hpp"

namespace qsur {

/// K~(x, z) = prod_j (1 + 2 cos(x_j - z_j)) / 3. |K~| <= 1.
double kernel_scaled(std::span<const double> x, std::span<const double> z);

/// K(x, z) = (2 pi)^{-m} prod_j (1 + 2 cos(x_j - z_j)) = (3 / (2 pi))^m K~(x, z).
/// Underflows towards zero as m grows; use kernel_scaled for computation.
double kernel_unscaled(std::span<const double> x, std::span<const double> z);

enum class KernelScaling {
  Scaled,   ///< K~, serialized as "ktilde"
  Unscaled  ///< K, serialized as "k"
};

/// (pi/2){-1,0,1}^m restricted to points with at most L nonzero entries, ordered
/// by support size, then support positions lexicographically, then sign pattern
/// (first support coordinate most significant, -pi/2 before +pi/2). -pi/2 is stored as residue 3.
std::vector<GridPoint> grid_nodes(std::size_t m, int order);

/// D = sum_{k<=L} C(m,k) 2^k.
std::uint64_t kernel_node_count(std::uint64_t m, int order);

/// floor(3^L m^L / L!).
std::uint64_t sample_count_bound_kernel(std::uint64_t m, int order);

/// Gram matrix (K(p_i, p_j)) evaluated exactly from residue differences. At most 12000 nodes.
Eigen::MatrixXd gram_matrix(std::span<const GridPoint> nodes, KernelScaling scaling = KernelScaling::Scaled,
                            unsigned threads = 1);

enum class SolvePolicy {
  Strict,       ///< Cholesky, then LDLT with a warning; numeric error if the residual check fails
  LeastSquares  ///< as Strict, with a final complete-orthogonal-decomposition attempt
};

struct GramSolveReport {
  std::string method;      ///< "cholesky", "ldlt" or "cod"
  double min_pivot = 0.0;  ///< smallest Cholesky pivot (diagonal of L squared)
  double residual_inf = 0.0;
  std::vector<std::string> warnings;
};

/// Solves gram * eta = y. A Cholesky pivot below 1e-12 * max diagonal counts as failure.
/// The accepted solution satisfies ||gram eta - y||_inf <= 1e-8 max(1, ||y||_inf).
Eigen::VectorXd solve_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y, SolvePolicy policy,
                           GramSolveReport* report = nullptr);

/// f~(theta) = sum_j eta_j K(p_j, theta) with K the kernel named by `scaling`.
class KernelSurrogate {
 public:
  KernelSurrogate() = default;
  KernelSurrogate(std::size_t m, int order, std::vector<GridPoint> nodes, std::vector<double> eta,
                  KernelScaling scaling = KernelScaling::Scaled);

  std::size_t num_params() const { return m_; }
  int order() const { return order_; }
  const std::vector<GridPoint>& nodes() const { return nodes_; }
  const std::vector<double>& eta() const { return eta_; }
  KernelScaling scaling() const { return scaling_; }

  friend bool operator==(const KernelSurrogate&, const KernelSurrogate&) = default;

 private:
  std::size_t m_ = 0;
  int order_ = 0;
  std::vector<GridPoint> nodes_;
  std::vector<double> eta_;
  KernelScaling scaling_ = KernelScaling::Scaled;
};

struct KernelBuildOptions {
  unsigned threads = 1;
  KernelScaling scaling = KernelScaling::Scaled;
  SolvePolicy policy = SolvePolicy::Strict;
};

/// Interpolates the given node values in the span of the kernel sections at the nodes.
KernelSurrogate fit_kernel_surrogate(std::size_t m, int order, std::vector<GridPoint> nodes,
                                     std::span<const double> values, const KernelBuildOptions& options = {},
                                     GramSolveReport* report = nullptr);

/// Samples f at grid_nodes(m, L) through the oracle and interpolates.
KernelSurrogate build_kernel_surrogate(GridOracle& oracle, int order, const KernelBuildOptions& options = {},
                                       GramSolveReport* report = nullptr);

double eval_kernel_surrogate(const KernelSurrogate& s, std::span<const double> theta);

const char* scaling_name(KernelScaling s);
KernelScaling scaling_from_name(const std::string& name);

}  // namespace qsur
