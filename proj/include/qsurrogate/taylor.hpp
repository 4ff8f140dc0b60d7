#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qsurrogate/grid.hpp"
#include "qsurrogate/multiindex.hpp"
#include "qsurrogate/oracle.hpp"

namespace qsur {

inline constexpr int kMaxTaylorOrder = 20;

struct TaylorTerm {
  MultiIndex alpha;
  double value = 0.0;  ///< D^alpha f(0) / alpha!
};

/// Taylor polynomial of f at 0 of order L. Terms cover every |alpha| <= L in
/// enumeration order, zeros included.
class TaylorSurrogate {
 public:
  TaylorSurrogate() = default;
  TaylorSurrogate(std::size_t m, int order, double obs_one_norm, std::vector<TaylorTerm> terms);

  std::size_t num_params() const { return m_; }
  int order() const { return order_; }
  double obs_one_norm() const { return one_norm_; }
  const std::vector<TaylorTerm>& terms() const { return terms_; }
  /// Coefficient of theta^alpha; throws if |alpha| > L or the length is wrong.
  double coefficient(const MultiIndex& alpha) const;

  friend bool operator==(const TaylorSurrogate& a, const TaylorSurrogate& b);

 private:
  std::size_t m_ = 0;
  int order_ = 0;
  double one_norm_ = 0.0;
  std::vector<TaylorTerm> terms_;
  std::map<MultiIndex, std::size_t> index_;
};

/// D^alpha f(0) = 2^{-|alpha|} sum_i sign(i) f(p_{alpha,i}) over all shift assignments.
double partial_at_zero(const GridFunction& f, const MultiIndex& alpha);

struct BuildOptions {
  unsigned threads = 1;  ///< > 1 requires a CacheMode::Concurrent (or Disabled) oracle
};

TaylorSurrogate build_taylor(GridOracle& oracle, int order, const BuildOptions& options = {});

/// sum_alpha c_alpha theta^alpha, summed in enumeration order.
double eval_taylor(const TaylorSurrogate& s, std::span<const double> theta);

/// Remainder bound (sum |a|) * (exp(x) - sum_{k<=L} x^k/k!) with x = ||theta||_1,
/// tightened to 2 (sum |a|) x^{L+1}/(L+1)! when x <= 1 + L/2.
double taylor_error_bound(double obs_one_norm, int order, std::span<const double> theta);
double taylor_error_bound_at_norm(double obs_one_norm, int order, double l1_norm);

/// The closed form 2 (sum |a|) x^{L+1}/(L+1)!, valid when x = ||theta||_1 <= 1 + L/2.
/// Never smaller than taylor_error_bound; throws outside its range.
double taylor_error_bound_sharpened(double obs_one_norm, int order, double l1_norm);

/// floor(4^L m^L / L!), a bound on distinct grid queries of build_taylor when L <= m.
std::uint64_t sample_count_bound_taylor(std::uint64_t m, int order);

}  // namespace qsur
