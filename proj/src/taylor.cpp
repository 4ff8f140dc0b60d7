#include "qsurrogate/taylor.hpp"

#include <cmath>
#include <limits>

#include "qsurrogate/errors.hpp"
#include "qsurrogate/parallel.hpp"

namespace qsur {

namespace {

void check_order(int order) {
  if (order < 0) throw ValidationError("Taylor order must be nonnegative");
  if (order > kMaxTaylorOrder) throw ValidationError("Taylor order above 20 is not supported");
}

}  // namespace

TaylorSurrogate::TaylorSurrogate(std::size_t m, int order, double obs_one_norm, std::vector<TaylorTerm> terms)
    : m_(m), order_(order), one_norm_(obs_one_norm), terms_(std::move(terms)) {
  check_order(order);
  const auto expected = enumerate_multiindices(m, order);
  if (expected.size() != terms_.size())
    throw ValidationError("Taylor surrogate must list all " + std::to_string(expected.size()) +
                          " multiindices of order <= " + std::to_string(order));
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].alpha != expected[i]) throw ValidationError("Taylor terms are not in enumeration order");
    index_.emplace(terms_[i].alpha, i);
  }
}

double TaylorSurrogate::coefficient(const MultiIndex& alpha) const {
  auto it = index_.find(alpha);
  if (it == index_.end()) throw ValidationError("multiindex not covered by this surrogate");
  return terms_[it->second].value;
}

bool operator==(const TaylorSurrogate& a, const TaylorSurrogate& b) {
  if (a.m_ != b.m_ || a.order_ != b.order_ || a.one_norm_ != b.one_norm_ || a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].alpha != b.terms_[i].alpha || a.terms_[i].value != b.terms_[i].value) return false;
  return true;
}

double partial_at_zero(const GridFunction& f, const MultiIndex& alpha) {
  const int k = alpha.order();
  if (k > 62) throw ValidationError("multiindex order too large for the shift rule");
  const std::uint64_t count = std::uint64_t{1} << k;
  double sum = 0.0;
  for (std::uint64_t c = 0; c < count; ++c) {
    const auto signs = shift_assignment(static_cast<std::size_t>(k), c);
    const double v = f(shift_point(alpha, signs));
    sum += sign_product(signs) > 0 ? v : -v;
  }
  return std::ldexp(sum, -k);
}

TaylorSurrogate build_taylor(GridOracle& oracle, int order, const BuildOptions& options) {
  check_order(order);
  if (options.threads > 1 && oracle.cache().mode() == CacheMode::Exclusive)
    throw ValidationError("multi-threaded build needs a concurrent evaluation cache");
  const auto alphas = enumerate_multiindices(oracle.num_params(), order);
  std::vector<TaylorTerm> terms(alphas.size());
  const GridFunction f = [&oracle](const GridPoint& p) { return oracle(p); };
  parallel_for(alphas.size(), options.threads, [&](std::size_t i) {
    const double d = partial_at_zero(f, alphas[i]);
    terms[i] = TaylorTerm{alphas[i], d / static_cast<double>(multi_factorial(alphas[i]))};
  });
  return TaylorSurrogate(oracle.num_params(), order, one_norm(oracle.observable()), std::move(terms));
}

double eval_taylor(const TaylorSurrogate& s, std::span<const double> theta) {
  if (theta.size() != s.num_params())
    throw ValidationError("theta has length " + std::to_string(theta.size()) + ", surrogate expects " +
                          std::to_string(s.num_params()));
  const std::size_t m = s.num_params();
  const auto L = static_cast<std::size_t>(s.order());
  // powers[j * (L + 1) + k] = theta_j^k
  std::vector<double> powers(m * (L + 1));
  for (std::size_t j = 0; j < m; ++j) {
    powers[j * (L + 1)] = 1.0;
    for (std::size_t k = 1; k <= L; ++k) powers[j * (L + 1) + k] = powers[j * (L + 1) + k - 1] * theta[j];
  }
  double total = 0.0;
  for (const auto& term : s.terms()) {
    double mono = term.value;
    for (std::size_t j = 0; j < m; ++j)
      if (term.alpha[j] != 0) mono *= powers[j * (L + 1) + static_cast<std::size_t>(term.alpha[j])];
    total += mono;
  }
  return total;
}

double taylor_error_bound_at_norm(double obs_one_norm, int order, double x) {
  check_order(order);
  if (x < 0.0 || obs_one_norm < 0.0) throw ValidationError("norms must be nonnegative");
  if (x == 0.0) return 0.0;
  // Tail of the exponential series, summed directly to avoid cancellation in exp(x) - partial sum.
  double term = 1.0;
  for (int k = 1; k <= order + 1; ++k) term *= x / k;
  const double leading = term;
  double tail = 0.0;
  for (int k = order + 1; k < order + 100000; ++k) {
    tail += term;
    term *= x / (k + 1);
    if (term <= tail * std::numeric_limits<double>::epsilon() * 0.5 || !std::isfinite(tail)) break;
  }
  double bound = obs_one_norm * tail;
  if (x <= 1.0 + order / 2.0) bound = std::min(bound, 2.0 * obs_one_norm * leading);
  return bound;
}

double taylor_error_bound_sharpened(double obs_one_norm, int order, double x) {
  check_order(order);
  if (x < 0.0 || obs_one_norm < 0.0) throw ValidationError("norms must be nonnegative");
  if (x > 1.0 + order / 2.0) throw ValidationError("sharpened bound needs ||theta||_1 <= 1 + L/2");
  double term = 1.0;
  for (int k = 1; k <= order + 1; ++k) term *= x / k;
  return 2.0 * obs_one_norm * term;
}

double taylor_error_bound(double obs_one_norm, int order, std::span<const double> theta) {
  double x = 0.0;
  for (double t : theta) x += std::abs(t);
  return taylor_error_bound_at_norm(obs_one_norm, order, x);
}

std::uint64_t sample_count_bound_taylor(std::uint64_t m, int order) {
  check_order(order);
  unsigned __int128 num = 1;
  for (int k = 0; k < order; ++k) {
    num *= static_cast<unsigned __int128>(4) * m;
    if (num >> 120) throw SizeError("sample count bound overflows");
  }
  const auto r = num / factorial(order);
  if (r > std::numeric_limits<std::uint64_t>::max()) throw SizeError("sample count bound overflows");
  return static_cast<std::uint64_t>(r);
}

}  // namespace qsur
