#include "qsurrogate/oracle.hpp"

#include "qsurrogate/errors.hpp"
#include "qsurrogate/simulator.hpp"

namespace qsur {

std::optional<double> EvaluationCache::lookup(const GridPoint& p) {
  if (mode_ == CacheMode::Disabled) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  std::optional<double> found;
  if (mode_ == CacheMode::Concurrent) {
    std::shared_lock lock(mutex_);
    if (auto it = store_.find(p); it != store_.end()) found = it->second;
  } else if (auto it = store_.find(p); it != store_.end()) {
    found = it->second;
  }
  (found ? hits_ : misses_).fetch_add(1, std::memory_order_relaxed);
  return found;
}

void EvaluationCache::store(const GridPoint& p, double value) {
  if (mode_ == CacheMode::Disabled) return;
  if (mode_ == CacheMode::Concurrent) {
    std::unique_lock lock(mutex_);
    store_.emplace(p, value);
  } else {
    store_.emplace(p, value);
  }
}

CacheStats EvaluationCache::stats() const {
  CacheStats s;
  s.hits = hits_.load();
  s.misses = misses_.load();
  if (mode_ == CacheMode::Concurrent) {
    std::shared_lock lock(mutex_);
    s.distinct = store_.size();
  } else if (mode_ == CacheMode::Disabled) {
    s.distinct = static_cast<std::size_t>(s.misses);
  } else {
    s.distinct = store_.size();
  }
  return s;
}

void EvaluationCache::clear() {
  std::unique_lock lock(mutex_);
  store_.clear();
  hits_ = 0;
  misses_ = 0;
}

GridOracle::GridOracle(const ParametrizedCircuit& circuit, const Observable& observable, CacheMode mode)
    : circuit_(circuit), observable_(observable), cache_(mode) {
  if (observable.num_qubits() != circuit.num_qubits())
    throw ValidationError("observable acts on " + std::to_string(observable.num_qubits()) +
                          " qubits, circuit has " + std::to_string(circuit.num_qubits()));
}

double GridOracle::operator()(const GridPoint& p) {
  if (p.size() != circuit_.num_params())
    throw ValidationError("grid point has " + std::to_string(p.size()) + " coordinates, expected " +
                          std::to_string(circuit_.num_params()));
  if (auto hit = cache_.lookup(p)) return *hit;
  const auto theta = p.angles();
  const double value = f_eval(circuit_, observable_, theta);
  cache_.store(p, value);
  return value;
}

double GridOracle::at(std::span<const double> theta) const { return f_eval(circuit_, observable_, theta); }

double oracle_eval(GridOracle& oracle, const GridPoint& p) { return oracle(p); }

}  // namespace qsur
