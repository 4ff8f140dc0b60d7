#include "qsurrogate/rkhs.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qsurrogate/errors.hpp"

namespace qsur {

namespace {

// Calls fn(point) for every point of (pi/2){0,1,2,3}^m, as angles r * pi/2.
template <class Fn>
void for_each_lattice_point(std::size_t m, Fn&& fn) {
  const std::size_t count = std::size_t{1} << (2 * m);
  std::vector<double> x(m);
  GridPoint p(m);
  for (std::size_t code = 0; code < count; ++code) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto r = static_cast<long long>((code >> (2 * j)) & 3u);
      p.set(j, r);
      x[j] = static_cast<double>(r) * (std::numbers::pi / 2);
    }
    fn(p, std::span<const double>(x));
  }
}

double kernel_by(KernelScaling s, std::span<const double> x, std::span<const double> z) {
  return s == KernelScaling::Scaled ? kernel_scaled(x, z) : kernel_unscaled(x, z);
}

}  // namespace

double h_inner_product(const RealFunction& g1, const RealFunction& g2, std::size_t m) {
  if (m == 0 || m > 8) throw SizeError("lattice inner product supports 1 <= m <= 8");
  double sum = 0.0;
  for_each_lattice_point(m, [&](const GridPoint&, std::span<const double> x) { sum += g1(x) * g2(x); });
  return std::pow(std::numbers::pi / 2, static_cast<double>(m)) * sum;
}

double h_norm(const RealFunction& g, std::size_t m) { return std::sqrt(h_inner_product(g, g, m)); }

RealFunction reconstruct_exact(const GridFunction& f, std::size_t m) {
  if (m == 0 || m > 3) throw SizeError("reconstruct_exact supports 1 <= m <= 3");
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  for_each_lattice_point(m, [&](const GridPoint& p, std::span<const double> x) {
    points.emplace_back(x.begin(), x.end());
    values.push_back(f(p));
  });
  const double scale = std::pow(std::numbers::pi / 2, static_cast<double>(m));
  return [points = std::move(points), values = std::move(values), scale, m](std::span<const double> theta) {
    if (theta.size() != m) throw ValidationError("reconstruction expects " + std::to_string(m) + " coordinates");
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) sum += values[i] * kernel_unscaled(points[i], theta);
    return scale * sum;
  };
}

NodeReductionSides pi_node_reduction_check(const GridPoint& base, std::size_t coordinate, KernelScaling scaling) {
  if (coordinate >= base.size()) throw ValidationError("coordinate out of range");
  if (base[coordinate] != 2) throw ValidationError("base point must have residue 2 at the chosen coordinate");
  const auto centre = base.centered_angles();
  auto with = [&](double v) {
    auto c = centre;
    c[coordinate] = v;
    return c;
  };
  const auto plus = with(std::numbers::pi / 2);
  const auto minus = with(-std::numbers::pi / 2);
  const auto zero = with(0.0);
  NodeReductionSides sides;
  sides.lhs = [centre, scaling](std::span<const double> theta) { return kernel_by(scaling, centre, theta); };
  sides.rhs = [plus, minus, zero, scaling](std::span<const double> theta) {
    return kernel_by(scaling, plus, theta) + kernel_by(scaling, minus, theta) - kernel_by(scaling, zero, theta);
  };
  return sides;
}

}  // namespace qsur
