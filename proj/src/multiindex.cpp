#include "qsurrogate/multiindex.hpp"

#include <limits>

#include "qsurrogate/errors.hpp"

namespace qsur {

namespace {

// Appends all tails of length (m - pos) with entry sum exactly `remaining`,
// largest leading entry first.
void fill_degree(std::vector<int>& current, std::size_t pos, int remaining, std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[pos] = v;
    fill_degree(current, pos + 1, remaining - v, out);
  }
  current[pos] = 0;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int a : entries_) {
    if (a < 0) throw ValidationError("multiindex entries must be nonnegative");
    order_ += a;
  }
}

std::vector<MultiIndex> enumerate_multiindices(std::size_t m, int max_order) {
  if (m == 0) throw ValidationError("enumerate_multiindices needs m >= 1");
  if (max_order < 0) throw ValidationError("order must be nonnegative");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(binomial(m + static_cast<std::uint64_t>(max_order), max_order)));
  std::vector<int> current(m, 0);
  for (int k = 0; k <= max_order; ++k) fill_degree(current, 0, k, out);
  return out;
}

int sign_product(std::span<const std::int8_t> signs) {
  int p = 1;
  for (auto s : signs) p *= s;
  return p;
}

GridPoint shift_point(const MultiIndex& alpha, std::span<const std::int8_t> signs) {
  if (signs.size() != static_cast<std::size_t>(alpha.order()))
    throw ValidationError("shift assignment has length " + std::to_string(signs.size()) + ", expected |alpha| = " +
                          std::to_string(alpha.order()));
  GridPoint p(alpha.size());
  std::size_t k = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    long long sum = 0;
    for (int t = 0; t < alpha[j]; ++t) sum += signs[k++];
    p.set(j, sum);
  }
  return p;
}

ShiftAssignment shift_assignment(std::size_t length, std::uint64_t k) {
  ShiftAssignment s(length);
  for (std::size_t t = 0; t < length; ++t) s[t] = ((k >> t) & 1u) ? 1 : -1;
  return s;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) throw SizeError("binomial coefficient overflows");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t factorial(int k) {
  if (k < 0 || k > 20) throw ValidationError("factorial is only exact for 0 <= k <= 20");
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t multi_factorial(const MultiIndex& alpha) {
  if (alpha.order() > 20) throw ValidationError("multiindex order above 20");
  std::uint64_t r = 1;
  for (int a : alpha.entries()) r *= factorial(a);
  return r;
}

}  // namespace qsur
