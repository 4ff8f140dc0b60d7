#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qsur {

/// Element of (pi/2) Z^m stored as Euclidean residues mod 4. Equality and
/// hashing are exact on the residue vector.
class GridPoint {
 public:
  GridPoint() = default;
  explicit GridPoint(std::size_t m) : residues_(m, 0) {}
  /// Canonicalizes each entry by Euclidean mod 4.
  static GridPoint from_integers(std::span<const long long> multiples);

  std::size_t size() const { return residues_.size(); }
  std::uint8_t operator[](std::size_t j) const { return residues_[j]; }
  const std::vector<std::uint8_t>& residues() const { return residues_; }
  void set(std::size_t j, long long multiple);

  /// (pi/2) * residue per coordinate, i.e. values in {0, pi/2, pi, 3pi/2}.
  std::vector<double> angles() const;
  /// Symmetric representative in {0, pi/2, pi, -pi/2}.
  std::vector<double> centered_angles() const;
  std::size_t support_size() const;
  std::string to_string() const;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;

 private:
  std::vector<std::uint8_t> residues_;
};

inline std::uint8_t mod4(long long x) { return static_cast<std::uint8_t>(((x % 4) + 4) % 4); }

/// Angle of residue r in the symmetric representative set.
double centered_angle(std::uint8_t residue);

struct GridPointHash {
  std::size_t operator()(const GridPoint& p) const noexcept;
};

/// A real function sampled on the grid (pi/2) Z^m.
using GridFunction = std::function<double(const GridPoint&)>;

}  // namespace qsur
