#pragma once

// Brute-force identities of the space H of real trigonometric polynomials with
// frequencies in {-1,0,1}^m. These are small-m reference routines used to check
// the kernel surrogate independently of the Gram solve.

#include <functional>
#include <span>

#include "qsurrogate/grid.hpp"
#include "qsurrogate/kernel.hpp"

namespace qsur {

using RealFunction = std::function<double(std::span<const double>)>;

/// <g1, g2>_H = integral over [-pi, pi]^m of g1 g2, evaluated exactly for g1, g2 in H
/// as (pi/2)^m sum over the lattice (pi/2){0,1,2,3}^m. m <= 8.
double h_inner_product(const RealFunction& g1, const RealFunction& g2, std::size_t m);
double h_norm(const RealFunction& g, std::size_t m);

/// theta -> (pi/2)^m sum_{p in (pi/2){0..3}^m} f(p) K(p, theta). Equals f for every
/// f in H. Samples f at all 4^m lattice points up front; m <= 3.
RealFunction reconstruct_exact(const GridFunction& f, std::size_t m);

struct NodeReductionSides {
  RealFunction lhs;  ///< theta -> K(p, theta), p with residue 2 (pi) at `coordinate`
  RealFunction rhs;  ///< K at p with pi/2, plus K at p with -pi/2, minus K at p with 0 in that coordinate
};

/// Both sides of the identity expressing a kernel section centred at a pi entry
/// through sections at -pi/2, 0, pi/2. Requires base[coordinate] == 2.
NodeReductionSides pi_node_reduction_check(const GridPoint& base, std::size_t coordinate,
                                           KernelScaling scaling = KernelScaling::Scaled);

}  // namespace qsur
