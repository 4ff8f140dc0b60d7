#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsurrogate/experiments.hpp"
#include "qsurrogate/kernel.hpp"
#include "qsurrogate/taylor.hpp"

namespace qsur {

using Surrogate = std::variant<TaylorSurrogate, KernelSurrogate>;

// taylor-v1: {kind, m, L, one_norm, coeffs: [{alpha: [ints], value}]}
// kernel-v1: {kind, m, L, scaling, nodes: [[residues]], eta: [floats]}
nlohmann::json to_json(const TaylorSurrogate& s);
nlohmann::json to_json(const KernelSurrogate& s);
nlohmann::json to_json(const Surrogate& s);
Surrogate surrogate_from_json(const nlohmann::json& j);

std::string dump_surrogate(const Surrogate& s);
void save_surrogate(const std::string& path, const Surrogate& s);
Surrogate load_surrogate(const std::string& path);

std::size_t num_params(const Surrogate& s);
double eval_surrogate(const Surrogate& s, std::span<const double> theta);

/// Shortest form is not used; CSV floats always carry 17 significant digits.
std::string format_g17(double v);

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows);

struct MCRow {
  std::string method;
  int order = 0;
  double k = 1.0;
  MCResult result;
};
void write_mc_csv(std::ostream& out, std::span<const MCRow> rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qsur
