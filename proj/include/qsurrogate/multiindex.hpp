#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsurrogate/grid.hpp"

namespace qsur {

/// alpha in Z_{>=0}^m.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }
  /// |alpha| = sum of entries.
  int order() const { return order_; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.entries_ == b.entries_; }
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

/// Signs in {-1, +1}, one per unit of |alpha|, grouped coordinate by coordinate:
/// the first alpha_0 entries belong to coordinate 0, the next alpha_1 to coordinate 1, ...
using ShiftAssignment = std::vector<std::int8_t>;

/// All alpha with |alpha| <= L in graded lexicographic order: by order, then
/// larger leading entries first. m = 2, L = 1 gives (0,0), (1,0), (0,1).
std::vector<MultiIndex> enumerate_multiindices(std::size_t m, int max_order);

/// Product of the entries; +1 for the empty assignment.
int sign_product(std::span<const std::int8_t> signs);

/// p_{alpha,i}: residue of coordinate j is (sum of its signs) mod 4.
GridPoint shift_point(const MultiIndex& alpha, std::span<const std::int8_t> signs);

/// The k-th assignment of length `length` in binary counting order: entry t is
/// +1 when bit t of k is set and -1 otherwise.
ShiftAssignment shift_assignment(std::size_t length, std::uint64_t k);

/// C(n, k) in exact arithmetic; throws on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
/// k! for k <= 20.
std::uint64_t factorial(int k);
/// alpha_0! ... alpha_{m-1}! for |alpha| <= 20.
std::uint64_t multi_factorial(const MultiIndex& alpha);

}  // namespace qsur
