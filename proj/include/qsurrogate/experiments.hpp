#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsurrogate/circuit.hpp"
#include "qsurrogate/grid.hpp"
#include "qsurrogate/pauli.hpp"
#include "qsurrogate/rkhs.hpp"

namespace qsur {

/// n qubits, d layers of (RX on every qubit, then CNOT(i,j) T(j) CNOT(i,j) for all
/// pairs i < j in lexicographic order), measured with Z^{(x) n}.
struct BenchmarkSpec {
  std::size_t n = 8;
  std::size_t d = 2;

  std::size_t num_params() const { return n * d; }
  /// The reference construction repeats the layer at least twice; d = 1 is a reduced test instance.
  bool reduced_depth() const { return d < 2; }
  Observable observable() const { return Observable::all_z(n); }
};

ParametrizedCircuit build_benchmark_circuit(std::size_t n, std::size_t d);
inline ParametrizedCircuit build_benchmark_circuit(const BenchmarkSpec& b) { return build_benchmark_circuit(b.n, b.d); }

enum class CurveId { Gamma1 = 1, Gamma2, Gamma3, Gamma4, Gamma5 };

/// Curves through parameter space. Written for m = 16 originally; for other m:
/// gamma2 keeps its first two special coordinates and repeats sin^4 t, gamma3/4 spread
/// (t+1)/2 evenly over the first m-1 coordinates, gamma5 sets the first four coordinates.
struct CurveSpec {
  CurveId id = CurveId::Gamma1;
  std::size_t m = 16;
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
};

CurveSpec make_curve(CurveId id, std::size_t m);
CurveId parse_curve_id(const std::string& name);
std::string curve_name(CurveId id);
std::vector<double> curve(const CurveSpec& spec, double t);

struct ScanRow {
  double t = 0.0;
  double f = 0.0;
  double f_tilde = 0.0;
  double abs_diff = 0.0;
  std::optional<double> bound;
};

std::vector<ScanRow> scan_curve(const RealFunction& f, const RealFunction& f_tilde, const CurveSpec& spec,
                                std::span<const double> t_grid, const RealFunction& bound = nullptr);

/// `count` evenly spaced values from t_min to t_max inclusive.
std::vector<double> linspace(double t_min, double t_max, std::size_t count);

struct MCOptions {
  std::size_t samples_f = 300000;
  std::size_t samples_diff = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double sem_threshold = 0.021;  ///< relative SEM above which a run is flagged
};

struct MCResult {
  double ratio = 0.0;      ///< norm_diff / norm_f
  double norm_f = 0.0;     ///< sqrt(mean f^2 * volume)
  double norm_diff = 0.0;  ///< sqrt(mean (f - f~)^2 * volume)
  double sem_f = 0.0;      ///< standard error of mean f^2
  double sem_diff = 0.0;   ///< standard error of mean (f - f~)^2
  double mean_f = 0.0;     ///< mean f^2
  double mean_diff = 0.0;  ///< mean (f - f~)^2
  std::size_t samples_f = 0;
  std::size_t samples_diff = 0;
  std::uint64_t seed = 0;
  bool sem_flagged = false;
};

/// Relative L2 error of f~ against f on [-pi/k, pi/k]^m by plain Monte Carlo with
/// independent sample sets for ||f|| and ||f - f~||. Samples are generated in fixed
/// chunks whose random streams depend only on (seed, set, chunk index), and chunk
/// partials are reduced in chunk order, so the result does not depend on `threads`.
MCResult mc_relative_l2(const RealFunction& f, const RealFunction& f_tilde, std::size_t m, double k,
                        const MCOptions& options = {});

/// Nodes together with their translates by `center`, canonicalized mod 4 and deduplicated.
/// Original nodes keep their positions; new points are appended in translation order.
std::vector<GridPoint> enrich_nodes_second_center(std::span<const GridPoint> nodes, const GridPoint& center);

}  // namespace qsur
