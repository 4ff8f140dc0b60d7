#include "qsurrogate/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsurrogate/errors.hpp"

namespace qsur {

using nlohmann::json;

namespace {

constexpr const char* kTaylorKind = "taylor-v1";
constexpr const char* kKernelKind = "kernel-v1";

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("surrogate file is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("surrogate field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const TaylorSurrogate& s) {
  json coeffs = json::array();
  for (const auto& t : s.terms()) coeffs.push_back({{"alpha", t.alpha.entries()}, {"value", t.value}});
  return {{"kind", kTaylorKind}, {"m", s.num_params()}, {"L", s.order()},
          {"one_norm", s.obs_one_norm()}, {"coeffs", std::move(coeffs)}};
}

json to_json(const KernelSurrogate& s) {
  json nodes = json::array();
  for (const auto& p : s.nodes()) {
    json r = json::array();
    for (auto v : p.residues()) r.push_back(static_cast<int>(v));
    nodes.push_back(std::move(r));
  }
  return {{"kind", kKernelKind}, {"m", s.num_params()}, {"L", s.order()}, {"scaling", scaling_name(s.scaling())},
          {"nodes", std::move(nodes)}, {"eta", s.eta()}};
}

json to_json(const Surrogate& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

Surrogate surrogate_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("surrogate file must hold a JSON object");
  const auto kind = field<std::string>(j, "kind");
  const auto m = field<std::size_t>(j, "m");
  const auto L = field<int>(j, "L");
  if (kind == kTaylorKind) {
    std::vector<TaylorTerm> terms;
    for (const auto& c : field<json>(j, "coeffs")) {
      auto alpha = field<std::vector<int>>(c, "alpha");
      if (alpha.size() != m) throw ValidationError("Taylor multiindex has the wrong length");
      terms.push_back({MultiIndex(std::move(alpha)), field<double>(c, "value")});
    }
    return TaylorSurrogate(m, L, field<double>(j, "one_norm"), std::move(terms));
  }
  if (kind == kKernelKind) {
    std::vector<GridPoint> nodes;
    for (const auto& n : field<json>(j, "nodes")) {
      std::vector<long long> r;
      try {
        r = n.get<std::vector<long long>>();
      } catch (const json::exception& e) {
        throw ValidationError(std::string("kernel node: ") + e.what());
      }
      for (auto v : r)
        if (v < 0 || v > 3) throw ValidationError("kernel node residues must be in {0,1,2,3}");
      nodes.push_back(GridPoint::from_integers(r));
    }
    return KernelSurrogate(m, L, std::move(nodes), field<std::vector<double>>(j, "eta"),
                           scaling_from_name(field<std::string>(j, "scaling")));
  }
  throw ValidationError("unknown surrogate kind '" + kind + "'");
}

std::string dump_surrogate(const Surrogate& s) { return to_json(s).dump(1) + "\n"; }

void save_surrogate(const std::string& path, const Surrogate& s) { write_text_file(path, dump_surrogate(s)); }

Surrogate load_surrogate(const std::string& path) {
  const auto text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
  return surrogate_from_json(j);
}

std::size_t num_params(const Surrogate& s) {
  return std::visit([](const auto& v) { return v.num_params(); }, s);
}

double eval_surrogate(const Surrogate& s, std::span<const double> theta) {
  if (const auto* t = std::get_if<TaylorSurrogate>(&s)) return eval_taylor(*t, theta);
  return eval_kernel_surrogate(std::get<KernelSurrogate>(s), theta);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows) {
  out << "t,f,f_tilde,abs_diff,bound\n";
  for (const auto& r : rows) {
    out << format_g17(r.t) << ',' << format_g17(r.f) << ',' << format_g17(r.f_tilde) << ','
        << format_g17(r.abs_diff) << ',';
    if (r.bound) out << format_g17(*r.bound);
    out << '\n';
  }
}

void write_mc_csv(std::ostream& out, std::span<const MCRow> rows) {
  out << "method,L,k,N_f,N_diff,seed,norm_f,sem_f,norm_diff,sem_diff,ratio\n";
  for (const auto& row : rows) {
    const auto& r = row.result;
    out << row.method << ',' << row.order << ',' << format_g17(row.k) << ',' << r.samples_f << ','
        << r.samples_diff << ',' << r.seed << ',' << format_g17(r.norm_f) << ',' << format_g17(r.sem_f) << ','
        << format_g17(r.norm_diff) << ',' << format_g17(r.sem_diff) << ',' << format_g17(r.ratio) << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing " + path);
}

}  // namespace qsur
