#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "qsurrogate/circuit.hpp"
#include "qsurrogate/grid.hpp"
#include "qsurrogate/pauli.hpp"

namespace qsur {

/// Access contract of an EvaluationCache, fixed at construction.
enum class CacheMode {
  Disabled,   ///< every query is a miss and nothing is stored
  Exclusive,  ///< single-threaded use only
  Concurrent  ///< lookups and inserts may race; guarded by a shared mutex
};

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::size_t distinct = 0;
};

/// Memo of f on grid points. A stored value is exactly the value f_eval
/// returned when it was first computed.
class EvaluationCache {
 public:
  explicit EvaluationCache(CacheMode mode = CacheMode::Exclusive) : mode_(mode) {}
  EvaluationCache(const EvaluationCache&) = delete;
  EvaluationCache& operator=(const EvaluationCache&) = delete;

  CacheMode mode() const { return mode_; }
  std::optional<double> lookup(const GridPoint& p);
  /// Records a computed value; keeps the existing entry if another worker got there first.
  void store(const GridPoint& p, double value);
  CacheStats stats() const;
  void clear();

 private:
  CacheMode mode_;
  std::unordered_map<GridPoint, double, GridPointHash> store_;
  mutable std::shared_mutex mutex_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

/// Blackbox access to f on the grid (pi/2) Z^m for a fixed circuit and observable.
class GridOracle {
 public:
  GridOracle(const ParametrizedCircuit& circuit, const Observable& observable,
             CacheMode mode = CacheMode::Exclusive);

  /// f at (pi/2) * residues, served from the cache when possible.
  double operator()(const GridPoint& p);
  /// f at an arbitrary point, bypassing the cache.
  double at(std::span<const double> theta) const;

  std::size_t num_params() const { return circuit_.num_params(); }
  const ParametrizedCircuit& circuit() const { return circuit_; }
  const Observable& observable() const { return observable_; }
  EvaluationCache& cache() { return cache_; }
  const EvaluationCache& cache() const { return cache_; }

 private:
  ParametrizedCircuit circuit_;
  Observable observable_;
  EvaluationCache cache_;
};

/// Free-function form of GridOracle::operator().
double oracle_eval(GridOracle& oracle, const GridPoint& p);

}  // namespace qsur
