#include "qsurrogate/grid.hpp"

#include <numbers>

#include "qsurrogate/errors.hpp"

namespace qsur {

GridPoint GridPoint::from_integers(std::span<const long long> multiples) {
  GridPoint p(multiples.size());
  for (std::size_t j = 0; j < multiples.size(); ++j) p.residues_[j] = mod4(multiples[j]);
  return p;
}

void GridPoint::set(std::size_t j, long long multiple) {
  if (j >= residues_.size()) throw ValidationError("grid coordinate out of range");
  residues_[j] = mod4(multiple);
}

std::vector<double> GridPoint::angles() const {
  std::vector<double> out(residues_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = residues_[j] * (std::numbers::pi / 2);
  return out;
}

double centered_angle(std::uint8_t residue) {
  constexpr double h = std::numbers::pi / 2;
  switch (residue & 3u) {
    case 0: return 0.0;
    case 1: return h;
    case 2: return std::numbers::pi;
    default: return -h;
  }
}

std::vector<double> GridPoint::centered_angles() const {
  std::vector<double> out(residues_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = centered_angle(residues_[j]);
  return out;
}

std::size_t GridPoint::support_size() const {
  std::size_t k = 0;
  for (auto r : residues_) k += (r != 0);
  return k;
}

std::string GridPoint::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < residues_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(residues_[j]);
  }
  return s + ")";
}

std::size_t GridPointHash::operator()(const GridPoint& p) const noexcept {
  // FNV-1a over the residues
  std::uint64_t h = 1469598103934665603ull;
  for (auto r : p.residues()) {
    h ^= r;
    h *= 1099511628211ull;
  }
  h ^= p.size();
  return static_cast<std::size_t>(h);
}

}  // namespace qsur
