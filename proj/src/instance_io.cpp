#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "revtri/cli.hpp"
#include "revtri/errors.hpp"

namespace revtri::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double as_finite(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(where + ": number is not finite");
  return v;
}

Vector parse_vector(const json& j, std::size_t dimension, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of [re, im] pairs");
  if (j.size() != dimension) {
    throw InputError(where + ": has " + std::to_string(j.size()) + " coordinates, dimension is " +
                     std::to_string(dimension));
  }
  std::vector<Complex> coords;
  for (std::size_t c = 0; c < j.size(); ++c) {
    const std::string at = where + " coordinate " + std::to_string(c);
    const json& pair = j[c];
    if (!pair.is_array() || pair.size() != 2) throw InputError(at + ": expected [re, im]");
    coords.emplace_back(as_finite(pair[0], at), as_finite(pair[1], at));
  }
  return Vector(std::move(coords));
}

std::vector<Vector> parse_vector_list(const json& root, const char* key, std::size_t dimension) {
  if (!root.contains(key) || !root[key].is_array() || root[key].empty()) {
    throw InputError(std::string("instance: '") + key + "' must be a non-empty list of vectors");
  }
  std::vector<Vector> vs;
  for (std::size_t k = 0; k < root[key].size(); ++k) {
    vs.push_back(parse_vector(root[key][k], dimension, std::string(key) + "[" + std::to_string(k) + "]"));
  }
  return vs;
}

ParamMap parse_param_map(const json& j) {
  if (j.is_null()) return {};
  if (!j.is_object()) throw InputError("params: expected a mapping");
  ParamMap out;
  for (const auto& [key, value] : j.items()) {
    std::vector<double> values;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        values.push_back(as_finite(value[i], "params." + key));
      }
    } else {
      values.push_back(as_finite(value, "params." + key));
    }
    out[key] = std::move(values);
  }
  return out;
}

TheoremId parse_theorem_field(const json& j) {
  if (!j.contains("theorem") || !j["theorem"].is_string()) {
    throw InputError("'theorem' must be a theorem identifier string");
  }
  return parse_theorem_id(j["theorem"].get<std::string>());
}

std::size_t frame_size_of(TheoremId id, std::size_t frame_size) {
  return uses_single_vector(id) ? 1 : frame_size;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": malformed JSON (" + e.what() + ")");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_vector(std::ostream& os, const Vector& v) {
  os << '[';
  for (std::size_t c = 0; c < v.dimension(); ++c) {
    if (c) os << ", ";
    os << '[' << num(v[c].real()) << ", " << num(v[c].imag()) << ']';
  }
  os << ']';
}

void write_vector_list(std::ostream& os, const char* key, std::span<const Vector> vs) {
  os << "  \"" << key << "\": [\n";
  for (std::size_t k = 0; k < vs.size(); ++k) {
    os << "    ";
    write_vector(os, vs[k]);
    os << (k + 1 < vs.size() ? ",\n" : "\n");
  }
  os << "  ]";
}

std::string optional_num(const std::optional<double>& v) { return v ? num(*v) : "none"; }

std::string list_num(const std::vector<double>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ", ";
    s += num(vs[i]);
  }
  return s + "]";
}

const char* flag(bool b) { return b ? "true" : "false"; }

std::string optional_flag(const std::optional<bool>& b) { return b ? flag(*b) : "none"; }

double scalar(const ParamMap& raw, const std::string& key, TheoremId id) {
  const auto it = raw.find(key);
  if (it == raw.end()) {
    throw InputError(std::string(to_string(id)) + ": missing parameter '" + key + "'");
  }
  if (it->second.size() != 1) {
    throw InputError(std::string(to_string(id)) + ": parameter '" + key + "' must be a single number");
  }
  return it->second.front();
}

std::vector<double> list(const ParamMap& raw, const std::string& key, TheoremId id,
                         std::size_t frame_size) {
  const auto it = raw.find(key);
  if (it == raw.end()) {
    throw InputError(std::string(to_string(id)) + ": missing parameter '" + key + "'");
  }
  if (it->second.size() != frame_size) {
    throw InputError(std::string(to_string(id)) + ": parameter '" + key + "' needs " +
                     std::to_string(frame_size) + " entries (one per frame member), got " +
                     std::to_string(it->second.size()));
  }
  return it->second;
}

void require_keys(const ParamMap& raw, TheoremId id, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : raw) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) {
      throw InputError(std::string(to_string(id)) + ": unknown parameter '" + key + "'");
    }
  }
}

}  // namespace

TheoremParams build_params(TheoremId id, const ParamMap& raw, std::size_t frame_size) {
  switch (id) {
    case TheoremId::dm:
      require_keys(raw, id, {"r"});
      return DmParams{scalar(raw, "r", id)};
    case TheoremId::thm1:
      require_keys(raw, id, {"r1", "r2"});
      return Thm1Params{scalar(raw, "r1", id), scalar(raw, "r2", id)};
    case TheoremId::thm2:
    case TheoremId::cor9:
      require_keys(raw, id, {"p1", "p2"});
      return Thm2Params{scalar(raw, "p1", id), scalar(raw, "p2", id)};
    case TheoremId::thm4:
      require_keys(raw, id, {"p"});
      return Thm4Params{scalar(raw, "p", id)};
    case TheoremId::thm5:
      require_keys(raw, id, {"r", "rho"});
      return Thm5Params{list(raw, "r", id, frame_size), list(raw, "rho", id, frame_size)};
    case TheoremId::cor6:
      require_keys(raw, id, {"r"});
      return Thm5Params{list(raw, "r", id, frame_size), std::vector<double>(frame_size, 0.0)};
    case TheoremId::thm7:
      require_keys(raw, id, {"p", "q"});
      return Thm7Params{list(raw, "p", id, frame_size), list(raw, "q", id, frame_size)};
    case TheoremId::thm10:
    case TheoremId::thm11:
      require_keys(raw, id, {"m", "M", "ell", "L"});
      return Thm10Params{scalar(raw, "m", id), scalar(raw, "M", id), scalar(raw, "ell", id),
                         scalar(raw, "L", id)};
    case TheoremId::cor3:
    case TheoremId::cor8:
      require_keys(raw, id, {});
      return NoParams{};
  }
  throw InputError("unhandled theorem id");
}

ParamMap params_to_map(const TheoremParams& params) {
  ParamMap out;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DmParams>) {
          out["r"] = {p.r};
        } else if constexpr (std::is_same_v<P, Thm1Params>) {
          out["r1"] = {p.r1};
          out["r2"] = {p.r2};
        } else if constexpr (std::is_same_v<P, Thm2Params>) {
          out["p1"] = {p.p1};
          out["p2"] = {p.p2};
        } else if constexpr (std::is_same_v<P, Thm4Params>) {
          out["p"] = {p.p};
        } else if constexpr (std::is_same_v<P, Thm5Params>) {
          out["r"] = p.r;
          out["rho"] = p.rho;
        } else if constexpr (std::is_same_v<P, Thm7Params>) {
          out["p"] = p.p;
          out["q"] = p.q;
        } else if constexpr (std::is_same_v<P, Thm10Params>) {
          out["m"] = {p.m};
          out["M"] = {p.M};
          out["ell"] = {p.ell};
          out["L"] = {p.L};
        }
      },
      params);
  return out;
}

ProblemInstance parse_instance(const std::string& text) {
  const json root = parse_json(text, "instance");
  if (!root.is_object()) throw InputError("instance: expected a JSON object");
  if (!root.contains("dimension") || !root["dimension"].is_number_unsigned() ||
      root["dimension"].get<std::size_t>() == 0) {
    throw InputError("instance: 'dimension' must be a positive integer");
  }
  const auto dimension = root["dimension"].get<std::size_t>();
  const TheoremId id = parse_theorem_field(root);
  OrthonormalFrame frame(parse_vector_list(root, "frame", dimension));
  VectorFamily vectors(parse_vector_list(root, "vectors", dimension));
  ParamMap raw = parse_param_map(root.value("params", json()));
  if (id == TheoremId::cor6) raw.erase("rho");
  TheoremParams params = build_params(id, raw, frame_size_of(id, frame.size()));
  return {dimension, TheoremSpec{id, std::move(params)}, std::move(frame), std::move(vectors)};
}

ProblemInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string serialize_instance(const ProblemInstance& instance) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"dimension\": " << instance.dimension << ",\n";
  os << "  \"theorem\": \"" << to_string(instance.spec.id) << "\",\n";
  ParamMap params = params_to_map(instance.spec.params);
  if (instance.spec.id == TheoremId::cor6) params.erase("rho");
  const bool list_valued = std::holds_alternative<Thm5Params>(instance.spec.params) ||
                           std::holds_alternative<Thm7Params>(instance.spec.params);
  os << "  \"params\": {";
  bool first = true;
  for (const auto& [key, values] : params) {
    os << (first ? "" : ", ") << '"' << key << "\": " << (list_valued ? list_num(values) : num(values.front()));
    first = false;
  }
  os << "},\n";
  write_vector_list(os, "frame", instance.frame.members());
  os << ",\n";
  write_vector_list(os, "vectors", instance.vectors.vectors());
  os << "\n}\n";
  return os.str();
}

std::vector<TheoremSpec> load_grid(const std::string& path, std::size_t frame_size) {
  const json root = parse_json(read_file(path), "grid");
  if (!root.is_object() || !root.contains("grid") || !root["grid"].is_array()) {
    throw InputError("grid: expected {\"grid\": [...]}");
  }
  std::vector<TheoremSpec> grid;
  for (const auto& entry : root["grid"]) {
    if (!entry.is_object()) throw InputError("grid: entries must be objects");
    const TheoremId id = parse_theorem_field(entry);
    ParamMap raw = parse_param_map(entry.value("params", json()));
    if (id == TheoremId::cor6) raw.erase("rho");
    grid.push_back({id, build_params(id, raw, frame_size_of(id, frame_size))});
  }
  return grid;
}

std::string format_certificate(const BoundCertificate& cert) {
  std::ostringstream os;
  os << "theorem = " << to_string(cert.theorem_id) << '\n';
  os << "status = " << to_string(cert.status()) << '\n';
  os << "bound = " << num(cert.bound) << '\n';
  os << "sum_of_norms = " << num(cert.sum_of_norms) << '\n';
  os << "norm_of_sum = " << num(cert.norm_of_sum) << '\n';
  os << "ratio = " << optional_num(cert.ratio) << '\n';
  os << "inequality_holds = " << flag(cert.inequality_holds) << '\n';
  os << "equality_case = " << flag(cert.equality_case) << '\n';
  os << "equality_residual = " << num(cert.equality_residual) << '\n';
  os << "strict_applicable = " << optional_flag(cert.strict_applicable) << '\n';
  os << "strict_holds = " << optional_flag(cert.strict_holds) << '\n';
  os << "tolerance = " << num(cert.tolerance) << '\n';
  const auto& c = cert.constants;
  os << "constants.alpha = " << optional_num(c.alpha) << '\n';
  os << "constants.alpha1 = " << optional_num(c.alpha1) << '\n';
  os << "constants.alpha2 = " << optional_num(c.alpha2) << '\n';
  os << "constants.alpha_t = " << list_num(c.alpha_t) << '\n';
  os << "constants.beta_t = " << list_num(c.beta_t) << '\n';
  os << "constants.alpha_mM = " << optional_num(c.alpha_mM) << '\n';
  os << "constants.alpha_lL = " << optional_num(c.alpha_lL) << '\n';
  os << "hypotheses_satisfied = " << flag(cert.hypothesis.satisfied) << '\n';
  os << "hypothesis_tolerance = " << num(cert.hypothesis.tolerance_used) << '\n';
  os << "margin_count = " << cert.hypothesis.margins.size() << '\n';
  for (std::size_t i = 0; i < cert.hypothesis.margins.size(); ++i) {
    const auto& m = cert.hypothesis.margins[i];
    os << "margin[" << i << "] = " << m.vector_index << ' ' << m.condition_id << ' '
       << num(m.margin) << '\n';
  }
  return os.str();
}

}  // namespace revtri::cli
