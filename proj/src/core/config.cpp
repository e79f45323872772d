#include "core/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tcq {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

toml_value parse_scalar(const std::string& raw, const std::string& where) {
  const std::string s = trim(raw);
  if (s.empty()) throw std::invalid_argument("empty value at " + where);
  toml_value v;
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw std::invalid_argument("unterminated string at " + where);
    v.k = toml_value::kind::string;
    v.str = s.substr(1, s.size() - 2);
    return v;
  }
  if (s == "true" || s == "false") {
    v.k = toml_value::kind::boolean;
    v.b = s == "true";
    return v;
  }
  std::size_t used = 0;
  try {
    v.num = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse value '" + s + "' at " + where);
  }
  if (used != s.size())
    throw std::invalid_argument("trailing characters in value '" + s + "' at " + where);
  v.k = toml_value::kind::number;
  return v;
}

toml_value parse_value(const std::string& raw, const std::string& where) {
  const std::string s = trim(raw);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("unterminated array at " + where);
    toml_value v;
    v.k = toml_value::kind::array;
    const std::string body = s.substr(1, s.size() - 2);
    std::string cell;
    bool quoted = false;
    for (char ch : body) {
      if (ch == '"') quoted = !quoted;
      if (ch == ',' && !quoted) {
        v.items.push_back(parse_scalar(cell, where));
        cell.clear();
      } else {
        cell += ch;
      }
    }
    if (!trim(cell).empty()) v.items.push_back(parse_scalar(cell, where));
    return v;
  }
  return parse_scalar(s, where);
}

}  // namespace

toml_table parse_toml(const std::string& text, const std::string& origin) {
  toml_table table;
  std::string section;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("malformed section header at " + where);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw std::invalid_argument("empty section at " + where);
      table[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key = value at " + where);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("empty key at " + where);
    if (section.empty())
      throw std::invalid_argument("key outside any [section] at " + where);
    table[section][key] = parse_value(line.substr(eq + 1), where);
  }
  return table;
}

void apply_overrides(toml_table& table, const std::vector<std::string>& overrides) {
  for (const auto& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override must look like section.key=value: " + ov);
    const std::string path = trim(ov.substr(0, eq));
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos)
      throw std::invalid_argument("override key needs a section prefix: " + ov);
    table[path.substr(0, dot)][path.substr(dot + 1)] =
        parse_value(ov.substr(eq + 1), "override '" + ov + "'");
  }
}

namespace {

class schema_reader {
 public:
  schema_reader(const toml_table& table, const std::string& section)
      : section_(section) {
    const auto it = table.find(section);
    if (it != table.end()) keys_ = &it->second;
  }

  const toml_value* find(const std::string& key) {
    seen_.push_back(key);
    if (!keys_) return nullptr;
    const auto it = keys_->find(key);
    return it == keys_->end() ? nullptr : &it->second;
  }

  std::string str(const std::string& key, std::string fallback) {
    const toml_value* v = find(key);
    if (!v) return fallback;
    if (v->k != toml_value::kind::string) bad_type(key, "a string");
    return v->str;
  }
  double num(const std::string& key, double fallback) {
    const toml_value* v = find(key);
    if (!v) return fallback;
    if (v->k != toml_value::kind::number) bad_type(key, "a number");
    return v->num;
  }
  int integer(const std::string& key, int fallback) {
    const toml_value* v = find(key);
    if (!v) return fallback;
    if (v->k != toml_value::kind::number || v->num != std::floor(v->num))
      bad_type(key, "an integer");
    return static_cast<int>(v->num);
  }
  bool boolean(const std::string& key, bool fallback) {
    const toml_value* v = find(key);
    if (!v) return fallback;
    if (v->k != toml_value::kind::boolean) bad_type(key, "a boolean");
    return v->b;
  }
  std::vector<double> numbers(const std::string& key) {
    const toml_value* v = find(key);
    std::vector<double> out;
    if (!v) return out;
    if (v->k != toml_value::kind::array) bad_type(key, "an array");
    for (const auto& item : v->items) {
      if (item.k != toml_value::kind::number) bad_type(key, "an array of numbers");
      out.push_back(item.num);
    }
    return out;
  }

  void reject_unknown() const {
    if (!keys_) return;
    for (const auto& [key, value] : *keys_) {
      (void)value;
      bool known = false;
      for (const auto& s : seen_)
        if (s == key) known = true;
      if (!known)
        throw std::invalid_argument("unknown config key: " + section_ + "." + key);
    }
  }

 private:
  [[noreturn]] void bad_type(const std::string& key, const char* want) {
    throw std::invalid_argument("config key " + section_ + "." + key + " must be " +
                                want);
  }

  std::string section_;
  const std::map<std::string, toml_value>* keys_ = nullptr;
  std::vector<std::string> seen_;
};

}  // namespace

run_config config_from_table(const toml_table& table, const std::string& raw_text) {
  static const char* known_sections[] = {"run",      "problem",    "ansatz",
                                         "evolution", "noise",     "sampling",
                                         "mitigation", "scan",     "mp2no",
                                         "output"};
  for (const auto& [section, keys] : table) {
    (void)keys;
    bool known = false;
    for (const char* s : known_sections)
      if (section == s) known = true;
    if (!known) throw std::invalid_argument("unknown config section: " + section);
  }

  run_config cfg;
  cfg.config_text = raw_text;

  schema_reader run(table, "run");
  cfg.seed = static_cast<std::uint64_t>(run.num("seed", static_cast<double>(cfg.seed)));
  cfg.threads = run.integer("threads", cfg.threads);
  run.reject_unknown();

  schema_reader problem(table, "problem");
  cfg.integrals = problem.str("integrals", cfg.integrals);
  cfg.encoding = problem.str("encoding", cfg.encoding);
  cfg.truncation = problem.num("truncation", cfg.truncation);
  cfg.truncation_report = problem.numbers("truncation_report");
  problem.reject_unknown();

  schema_reader ansatz(table, "ansatz");
  cfg.ansatz = ansatz.str("kind", cfg.ansatz);
  cfg.layers = ansatz.integer("layers", cfg.layers);
  ansatz.reject_unknown();

  schema_reader evolution(table, "evolution");
  cfg.solver = evolution.str("solver", cfg.solver);
  cfg.derivatives = evolution.str("derivatives", cfg.derivatives);
  cfg.dtau = evolution.num("dtau", cfg.dtau);
  cfg.max_steps = evolution.integer("max_steps", cfg.max_steps);
  cfg.residual_tol = evolution.num("residual_tol", cfg.residual_tol);
  cfg.persistence = evolution.integer("persistence", cfg.persistence);
  cfg.svd_cutoff = evolution.num("svd_cutoff", cfg.svd_cutoff);
  cfg.fd_delta = evolution.num("fd_delta", cfg.fd_delta);
  cfg.trajectory = evolution.str("trajectory", cfg.trajectory);
  cfg.resume = evolution.boolean("resume", cfg.resume);
  evolution.reject_unknown();

  schema_reader noise(table, "noise");
  cfg.noise_enabled = noise.boolean("enabled", cfg.noise_enabled);
  cfg.p1 = noise.num("p1", cfg.p1);
  cfg.p2 = noise.num("p2", cfg.p2);
  cfg.readout_p01 = noise.num("readout_p01", cfg.readout_p01);
  cfg.readout_p10 = noise.num("readout_p10", cfg.readout_p10);
  noise.reject_unknown();

  schema_reader sampling(table, "sampling");
  cfg.shots = static_cast<std::uint64_t>(sampling.num("shots", 0.0));
  sampling.reject_unknown();

  schema_reader mitigation(table, "mitigation");
  cfg.zne = mitigation.boolean("zne", cfg.zne);
  {
    const std::vector<double> scales = mitigation.numbers("zne_scales");
    if (!scales.empty()) {
      cfg.zne_scales.clear();
      for (double s : scales) cfg.zne_scales.push_back(static_cast<int>(s));
    }
  }
  cfg.zne_order = mitigation.integer("zne_order", cfg.zne_order);
  cfg.rem = mitigation.boolean("rem", cfg.rem);
  cfg.readout_correction =
      mitigation.boolean("readout_correction", cfg.readout_correction);
  mitigation.reject_unknown();

  schema_reader scan(table, "scan");
  cfg.geometries = scan.str("geometries", cfg.geometries);
  cfg.scan_directory = scan.str("directory", cfg.scan_directory);
  cfg.window = scan.integer("window", cfg.window);
  cfg.curvature_at = scan.str("curvature_at", cfg.curvature_at);
  if (const toml_value* v = scan.find("reference_energy")) {
    if (v->k != toml_value::kind::number)
      throw std::invalid_argument("config key scan.reference_energy must be a number");
    cfg.reference_energy = v->num;
  }
  cfg.mass1 = scan.num("mass1", cfg.mass1);
  cfg.mass2 = scan.num("mass2", cfg.mass2);
  scan.reject_unknown();

  schema_reader mp2no(table, "mp2no");
  cfg.keep = mp2no.integer("keep", cfg.keep);
  cfg.mp2no_output = mp2no.str("output", cfg.mp2no_output);
  mp2no.reject_unknown();

  schema_reader output(table, "output");
  cfg.output_directory = output.str("directory", cfg.output_directory);
  output.reject_unknown();

  if (cfg.ansatz != "uccsd" && cfg.ansatz != "hea")
    throw std::invalid_argument("ansatz.kind must be uccsd or hea");
  if (cfg.solver != "exact" && cfg.solver != "varqite")
    throw std::invalid_argument("evolution.solver must be exact or varqite");
  if (cfg.layers < 0) throw std::invalid_argument("ansatz.layers must be nonnegative");
  if (cfg.window < 5) throw std::invalid_argument("scan.window must be at least 5");
  return cfg;
}

run_config load_run_config(const std::string& path,
                           const std::vector<std::string>& overrides) {
  std::string text;
  if (!path.empty()) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    text = buf.str();
  }
  toml_table table = parse_toml(text, path.empty() ? "<none>" : path);
  apply_overrides(table, overrides);
  std::string hashed = text;
  for (const auto& ov : overrides) hashed += "\n@override " + ov;
  return config_from_table(table, hashed);
}

}  // namespace tcq
