#include "qsurrogate/kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "qsurrogate/errors.hpp"
#include "qsurrogate/multiindex.hpp"
#include "qsurrogate/parallel.hpp"

namespace qsur {

namespace {

constexpr double kPivotRelTol = 1e-12;
constexpr double kResidualTol = 1e-8;
// 12000^2 doubles is about 1.15 GB
constexpr std::size_t kMaxGramSize = 12000;

void check_lengths(std::span<const double> x, std::span<const double> z) {
  if (x.size() != z.size())
    throw ValidationError("kernel arguments have lengths " + std::to_string(x.size()) + " and " +
                          std::to_string(z.size()));
}

void check_kernel_order(std::size_t m, int order) {
  if (order < 0 || static_cast<std::size_t>(order) > m)
    throw ValidationError("kernel order L = " + std::to_string(order) + " must satisfy 0 <= L <= m = " +
                          std::to_string(m));
}

// Per-coordinate kernel factor indexed by the residue difference mod 4.
std::array<double, 4> coordinate_factors(KernelScaling scaling) {
  if (scaling == KernelScaling::Scaled) return {1.0, 1.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0};
  const double c = 1.0 / (2.0 * std::numbers::pi);
  return {3.0 * c, c, -c, c};
}

double residual_inf(const Eigen::MatrixXd& g, const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
  return (g * eta - y).cwiseAbs().maxCoeff();
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

double kernel_scaled(std::span<const double> x, std::span<const double> z) {
  check_lengths(x, z);
  double k = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) k *= (1.0 + 2.0 * std::cos(x[j] - z[j])) / 3.0;
  return k;
}

double kernel_unscaled(std::span<const double> x, std::span<const double> z) {
  check_lengths(x, z);
  double k = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) k *= (1.0 + 2.0 * std::cos(x[j] - z[j])) / (2.0 * std::numbers::pi);
  return k;
}

std::vector<GridPoint> grid_nodes(std::size_t m, int order) {
  if (m == 0) throw ValidationError("grid_nodes needs m >= 1");
  check_kernel_order(m, order);
  std::vector<GridPoint> nodes;
  nodes.reserve(static_cast<std::size_t>(kernel_node_count(m, order)));
  std::vector<std::size_t> support;
  for (int k = 0; k <= order; ++k) {
    // combinations of k positions in lexicographic order
    support.resize(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) support[static_cast<std::size_t>(t)] = static_cast<std::size_t>(t);
    while (true) {
      const std::uint64_t patterns = std::uint64_t{1} << k;
      for (std::uint64_t s = 0; s < patterns; ++s) {
        GridPoint p(m);
        for (int t = 0; t < k; ++t) {
          const bool plus = (s >> (k - 1 - t)) & 1u;
          p.set(support[static_cast<std::size_t>(t)], plus ? 1 : -1);
        }
        nodes.push_back(std::move(p));
      }
      int t = k - 1;
      while (t >= 0 && support[static_cast<std::size_t>(t)] == m - static_cast<std::size_t>(k - t)) --t;
      if (t < 0) break;
      ++support[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < k; ++u)
        support[static_cast<std::size_t>(u)] = support[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
  return nodes;
}

std::uint64_t kernel_node_count(std::uint64_t m, int order) {
  if (order < 0) throw ValidationError("order must be nonnegative");
  std::uint64_t total = 0;
  for (int k = 0; k <= order; ++k) total += binomial(m, static_cast<std::uint64_t>(k)) << k;
  return total;
}

std::uint64_t sample_count_bound_kernel(std::uint64_t m, int order) {
  if (order < 0 || order > 20) throw ValidationError("order must be in [0, 20]");
  unsigned __int128 num = 1;
  for (int k = 0; k < order; ++k) {
    num *= static_cast<unsigned __int128>(3) * m;
    if (num >> 120) throw SizeError("sample count bound overflows");
  }
  const auto r = num / factorial(order);
  if (r > std::numeric_limits<std::uint64_t>::max()) throw SizeError("sample count bound overflows");
  return static_cast<std::uint64_t>(r);
}

Eigen::MatrixXd gram_matrix(std::span<const GridPoint> nodes, KernelScaling scaling, unsigned threads) {
  if (nodes.size() > kMaxGramSize)
    throw SizeError("Gram matrix of " + std::to_string(nodes.size()) + " nodes exceeds the limit of " +
                    std::to_string(kMaxGramSize));
  const auto d = static_cast<Eigen::Index>(nodes.size());
  const auto table = coordinate_factors(scaling);
  Eigen::MatrixXd g(d, d);
  parallel_for(nodes.size(), threads, [&](std::size_t i) {
    const auto& ri = nodes[i].residues();
    for (std::size_t k = i; k < nodes.size(); ++k) {
      const auto& rk = nodes[k].residues();
      double v = 1.0;
      for (std::size_t j = 0; j < ri.size(); ++j) v *= table[(ri[j] - rk[j]) & 3];
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v;
    }
  });
  g.triangularView<Eigen::StrictlyLower>() = g.transpose();
  return g;
}

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& y, SolvePolicy policy,
                           GramSolveReport* report) {
  if (gram.rows() != gram.cols() || gram.rows() != y.size())
    throw ValidationError("Gram system has inconsistent dimensions");
  GramSolveReport local;
  GramSolveReport& rep = report ? *report : local;
  rep = GramSolveReport{};
  if (gram.rows() == 0) {
    rep.method = "cholesky";
    return Eigen::VectorXd();
  }
  const double tol = kResidualTol * std::max(1.0, y.cwiseAbs().maxCoeff());
  const double max_diag = gram.diagonal().cwiseAbs().maxCoeff();

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  rep.min_pivot = llt.info() == Eigen::Success
                      ? llt.matrixLLT().diagonal().array().square().minCoeff()
                      : -std::numeric_limits<double>::infinity();
  if (llt.info() == Eigen::Success && rep.min_pivot >= kPivotRelTol * max_diag) {
    Eigen::VectorXd eta = llt.solve(y);
    rep.method = "cholesky";
    rep.residual_inf = residual_inf(gram, eta, y);
    if (rep.residual_inf <= tol) return eta;
    rep.warnings.push_back("Cholesky residual " + fmt_double(rep.residual_inf) + " exceeds tolerance");
  } else {
    rep.warnings.push_back("Gram matrix is not numerically positive definite (smallest pivot " +
                           fmt_double(rep.min_pivot) + "); falling back to LDLT");
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() == Eigen::Success) {
    Eigen::VectorXd eta = ldlt.solve(y);
    rep.method = "ldlt";
    rep.residual_inf = residual_inf(gram, eta, y);
    if (eta.allFinite() && rep.residual_inf <= tol) return eta;
  }
  if (policy == SolvePolicy::LeastSquares) {
    rep.warnings.push_back("LDLT solve rejected; using complete orthogonal decomposition");
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
    Eigen::VectorXd eta = cod.solve(y);
    rep.method = "cod";
    rep.residual_inf = residual_inf(gram, eta, y);
    if (eta.allFinite() && rep.residual_inf <= tol) return eta;
  }
  throw NumericError("Gram solve failed: smallest Cholesky pivot " + fmt_double(rep.min_pivot) + ", residual " +
                     fmt_double(rep.residual_inf));
}

KernelSurrogate::KernelSurrogate(std::size_t m, int order, std::vector<GridPoint> nodes, std::vector<double> eta,
                                 KernelScaling scaling)
    : m_(m), order_(order), nodes_(std::move(nodes)), eta_(std::move(eta)), scaling_(scaling) {
  if (m_ == 0) throw ValidationError("kernel surrogate needs m >= 1");
  if (order_ < 0) throw ValidationError("order must be nonnegative");
  if (nodes_.size() != eta_.size()) throw ValidationError("node and coefficient counts differ");
  std::unordered_set<GridPoint, GridPointHash> seen;
  for (const auto& p : nodes_) {
    if (p.size() != m_) throw ValidationError("node " + p.to_string() + " has the wrong dimension");
    if (!seen.insert(p).second) throw ValidationError("duplicate node " + p.to_string());
  }
}

KernelSurrogate fit_kernel_surrogate(std::size_t m, int order, std::vector<GridPoint> nodes,
                                     std::span<const double> values, const KernelBuildOptions& options,
                                     GramSolveReport* report) {
  if (values.size() != nodes.size()) throw ValidationError("need one value per node");
  const Eigen::MatrixXd g = gram_matrix(nodes, options.scaling, options.threads);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  const Eigen::VectorXd eta = solve_gram(g, y, options.policy, report);
  return KernelSurrogate(m, order, std::move(nodes), std::vector<double>(eta.data(), eta.data() + eta.size()),
                         options.scaling);
}

KernelSurrogate build_kernel_surrogate(GridOracle& oracle, int order, const KernelBuildOptions& options,
                                       GramSolveReport* report) {
  const std::size_t m = oracle.num_params();
  check_kernel_order(m, order);
  if (options.threads > 1 && oracle.cache().mode() == CacheMode::Exclusive)
    throw ValidationError("multi-threaded build needs a concurrent evaluation cache");
  if (kernel_node_count(m, order) > kMaxGramSize)
    throw SizeError("kernel surrogate with m = " + std::to_string(m) + ", L = " + std::to_string(order) + " needs " +
                    std::to_string(kernel_node_count(m, order)) + " nodes, above the limit of " +
                    std::to_string(kMaxGramSize));
  auto nodes = grid_nodes(m, order);
  std::vector<double> values(nodes.size());
  parallel_for(nodes.size(), options.threads, [&](std::size_t i) { values[i] = oracle(nodes[i]); });
  return fit_kernel_surrogate(m, order, std::move(nodes), values, options, report);
}

double eval_kernel_surrogate(const KernelSurrogate& s, std::span<const double> theta) {
  const std::size_t m = s.num_params();
  if (theta.size() != m)
    throw ValidationError("theta has length " + std::to_string(theta.size()) + ", surrogate expects " +
                          std::to_string(m));
  const double denom = s.scaling() == KernelScaling::Scaled ? 3.0 : 2.0 * std::numbers::pi;
  // factors[4 j + r] = kernel factor between residue r and theta_j
  std::vector<double> factors(4 * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::uint8_t r = 0; r < 4; ++r)
      factors[4 * j + r] = (1.0 + 2.0 * std::cos(theta[j] - centered_angle(r))) / denom;
  double total = 0.0;
  const auto& nodes = s.nodes();
  const auto& eta = s.eta();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& r = nodes[i].residues();
    double k = eta[i];
    for (std::size_t j = 0; j < m; ++j) k *= factors[4 * j + r[j]];
    total += k;
  }
  return total;
}

const char* scaling_name(KernelScaling s) { return s == KernelScaling::Scaled ? "ktilde" : "k"; }

KernelScaling scaling_from_name(const std::string& name) {
  if (name == "ktilde") return KernelScaling::Scaled;
  if (name == "k") return KernelScaling::Unscaled;
  throw ValidationError("unknown kernel scaling '" + name + "'");
}

}  // namespace qsur
