#include "qsurrogate/experiments.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <unordered_set>

#include "qsurrogate/errors.hpp"
#include "qsurrogate/parallel.hpp"

namespace qsur {

namespace {

constexpr std::size_t kChunk = 2048;

// Running mean / M2 accumulator, merged with Chan's update.
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    n += 1.0;
    const double delta = v - mean;
    mean += delta / n;
    m2 += delta * (v - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * o.n / total;
    m2 += o.m2 + delta * delta * n * o.n / total;
    n = total;
  }
  double sem() const { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

template <class Sample>
Moments sample_moments(std::size_t count, std::size_t m, double half_width, std::uint64_t seed, std::uint32_t set,
                       unsigned threads, Sample&& sample) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), set,
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uniform(-half_width, half_width);
    std::vector<double> x(m);
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      for (auto& xi : x) xi = uniform(rng);
      partial[c].add(sample(std::span<const double>(x)));
    }
  });
  Moments total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace

ParametrizedCircuit build_benchmark_circuit(std::size_t n, std::size_t d) {
  if (n < 2) throw ValidationError("benchmark circuit needs n >= 2 qubits");
  if (d < 1) throw ValidationError("benchmark circuit needs d >= 1 layers");
  std::vector<Gate> gates;
  for (std::size_t layer = 0; layer < d; ++layer) {
    for (std::size_t q = 0; q < n; ++q) gates.emplace_back(make_rotation(Pauli::X, n, q, layer * n + q));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        gates.emplace_back(make_cnot(i, j));
        gates.emplace_back(make_fixed(FixedKind::T, j));
        gates.emplace_back(make_cnot(i, j));
      }
    }
  }
  return ParametrizedCircuit(n, n * d, std::move(gates));
}

CurveSpec make_curve(CurveId id, std::size_t m) {
  CurveSpec spec{id, m};
  switch (id) {
    case CurveId::Gamma1:
      if (m < 1) throw ValidationError("gamma1 needs m >= 1");
      break;
    case CurveId::Gamma2:
      if (m < 2) throw ValidationError("gamma2 needs m >= 2");
      break;
    case CurveId::Gamma3:
    case CurveId::Gamma4:
      if (m < 2) throw ValidationError("gamma3/gamma4 need m >= 2");
      spec.t_min = -1.0;
      spec.t_max = 1.0;
      break;
    case CurveId::Gamma5:
      if (m < 4) throw ValidationError("gamma5 needs m >= 4");
      break;
    default:
      throw ValidationError("unknown curve");
  }
  return spec;
}

CurveId parse_curve_id(const std::string& name) {
  std::string s = name;
  if (s.rfind("gamma", 0) == 0) s = s.substr(5);
  else if (!s.empty() && (s[0] == 'g' || s[0] == 'G')) s = s.substr(1);
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '5') return static_cast<CurveId>(s[0] - '0');
  throw ValidationError("unknown curve '" + name + "' (expected g1..g5)");
}

std::string curve_name(CurveId id) { return "g" + std::to_string(static_cast<int>(id)); }

std::vector<double> curve(const CurveSpec& spec, double t) {
  if (!std::isfinite(t) || t < spec.t_min || t > spec.t_max)
    throw ValidationError("t = " + std::to_string(t) + " is outside the domain of " + curve_name(spec.id));
  const std::size_t m = spec.m;
  std::vector<double> x(m, 0.0);
  constexpr double pi = std::numbers::pi;
  switch (spec.id) {
    case CurveId::Gamma1:
      std::fill(x.begin(), x.end(), t);
      break;
    case CurveId::Gamma2: {
      const double s = std::sin(t);
      const double c = 1.0 - std::cos(t);
      x[0] = pi / 2 * s;
      x[1] = pi / 2 * c * c;
      const double s4 = s * s * s * s;
      for (std::size_t j = 2; j < m; ++j) x[j] = pi / 2 * s4;
      break;
    }
    case CurveId::Gamma3:
    case CurveId::Gamma4: {
      const double scale = (spec.id == CurveId::Gamma3 ? 4.0 : 2.0) * pi / 5.0;
      const double spread = (t + 1.0) / (2.0 * static_cast<double>(m - 1));
      for (std::size_t j = 0; j + 1 < m; ++j) x[j] = scale * spread;
      x[m - 1] = scale * (1.0 - (t + 1.0) / 2.0);
      break;
    }
    case CurveId::Gamma5:
      for (std::size_t j = 0; j < 4; ++j) x[j] = t;
      break;
  }
  return x;
}

std::vector<ScanRow> scan_curve(const RealFunction& f, const RealFunction& f_tilde, const CurveSpec& spec,
                                std::span<const double> t_grid, const RealFunction& bound) {
  std::vector<ScanRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    const auto x = curve(spec, t);
    ScanRow row;
    row.t = t;
    row.f = f(x);
    row.f_tilde = f_tilde(x);
    row.abs_diff = std::abs(row.f - row.f_tilde);
    if (bound) row.bound = bound(x);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> linspace(double t_min, double t_max, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) out[0] = t_min;
  for (std::size_t i = 0; count > 1 && i < count; ++i)
    out[i] = (i + 1 == count) ? t_max
                              : t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

MCResult mc_relative_l2(const RealFunction& f, const RealFunction& f_tilde, std::size_t m, double k,
                        const MCOptions& options) {
  if (m == 0) throw ValidationError("Monte Carlo needs m >= 1");
  if (!(k > 0.0)) throw ValidationError("domain parameter k must be positive");
  if (options.samples_f == 0 || options.samples_diff == 0) throw ValidationError("sample counts must be >= 1");
  const double half = std::numbers::pi / k;
  const double volume = std::pow(2.0 * half, static_cast<double>(m));

  const auto mf = sample_moments(options.samples_f, m, half, options.seed, 0, options.threads,
                                 [&](std::span<const double> x) {
                                   const double v = f(x);
                                   return v * v;
                                 });
  const auto md = sample_moments(options.samples_diff, m, half, options.seed, 1, options.threads,
                                 [&](std::span<const double> x) {
                                   const double v = f(x) - f_tilde(x);
                                   return v * v;
                                 });
  MCResult r;
  r.mean_f = mf.mean;
  r.mean_diff = md.mean;
  r.norm_f = std::sqrt(mf.mean * volume);
  r.norm_diff = std::sqrt(md.mean * volume);
  r.sem_f = mf.sem();
  r.sem_diff = md.sem();
  r.ratio = r.norm_f > 0.0 ? r.norm_diff / r.norm_f : std::numeric_limits<double>::quiet_NaN();
  r.samples_f = options.samples_f;
  r.samples_diff = options.samples_diff;
  r.seed = options.seed;
  auto exceeds = [&](double sem, double mean) { return mean > 0.0 && sem / mean > options.sem_threshold; };
  r.sem_flagged = exceeds(r.sem_f, r.mean_f) || exceeds(r.sem_diff, r.mean_diff);
  return r;
}

std::vector<GridPoint> enrich_nodes_second_center(std::span<const GridPoint> nodes, const GridPoint& center) {
  std::vector<GridPoint> out(nodes.begin(), nodes.end());
  std::unordered_set<GridPoint, GridPointHash> seen(out.begin(), out.end());
  for (const auto& p : nodes) {
    if (p.size() != center.size()) throw ValidationError("center dimension does not match the nodes");
    GridPoint q(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) q.set(j, static_cast<long long>(p[j]) + center[j]);
    if (seen.insert(q).second) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace qsur
