#include "arpe/config.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "arpe/errors.hpp"
#include "arpe/theory.hpp"

namespace arpe {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::logic_error&) {
    throw ConfigError("cannot read '" + text + "' as a number for " + what);
  }
  if (used != t.size()) throw ConfigError("cannot read '" + text + "' as a number for " + what);
  return v;
}

long long to_integer(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::logic_error&) {
    throw ConfigError("cannot read '" + text + "' as an integer for " + what);
  }
  if (used != t.size()) throw ConfigError("cannot read '" + text + "' as an integer for " + what);
  return v;
}

std::vector<double> exactly(const std::string& args, std::size_t count, const std::string& what) {
  auto v = parse_number_list(args);
  if (v.size() != count) {
    throw ConfigError(what + " expects " + std::to_string(count) + " parameter(s), got '" + args +
                      "'");
  }
  return v;
}

}  // namespace

KeyValues parse_key_values(std::istream& is) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in);
}

std::vector<double> parse_number_list(const std::string& text) {
  std::string s = text;
  for (char& ch : s) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(tok, "number list"));
  return out;
}

ProcessSpec parse_spec(const std::string& input) {
  std::string text = trim(input);
  double sigma2 = 1.0;
  if (const auto at = text.find('@'); at != std::string::npos) {
    sigma2 = to_double(text.substr(at + 1), "sigma2");
    text = trim(text.substr(0, at));
  }
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (kind == "whitenoise" || kind == "white_noise" || kind == "wn") {
    if (!trim(args).empty()) throw ConfigError("whitenoise takes no parameters");
    return ProcessSpec::white_noise(sigma2);
  }
  if (kind == "ar1") return ProcessSpec::ar1(exactly(args, 1, "ar1")[0], sigma2);
  if (kind == "ma1") return ProcessSpec::ma1(exactly(args, 1, "ma1")[0], sigma2);
  if (kind == "arma11") {
    const auto v = exactly(args, 2, "arma11");
    return ProcessSpec::arma11(v[0], v[1], sigma2);
  }
  if (kind == "arma") {
    const auto semi = args.find(';');
    if (semi == std::string::npos) throw ConfigError("arma expects 'PHIS;THETAS'");
    return ProcessSpec::arma(parse_number_list(args.substr(0, semi)),
                             parse_number_list(args.substr(semi + 1)), sigma2);
  }
  if (kind == "expdecay") {
    const auto v = exactly(args, 2, "expdecay");
    return ProcessSpec::exponential_decay(v[0], v[1], sigma2);
  }
  if (kind == "algdecay") {
    const auto v = exactly(args, 2, "algdecay");
    return ProcessSpec::algebraic_decay(v[0], v[1], sigma2);
  }
  if (kind == "coeffs") return ProcessSpec::explicit_ar(parse_number_list(args), sigma2);
  throw ConfigError("unknown process '" + kind + "'");
}

ProcessSpec spec_from_config(const KeyValues& kv) {
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto need = [&](const std::string& key, const std::string& kind) -> const std::string& {
    const auto* v = get(key);
    if (!v) throw ConfigError("process kind '" + kind + "' needs key '" + key + "'");
    return *v;
  };
  const double sigma2 = get("sigma2") ? to_double(*get("sigma2"), "sigma2") : 1.0;
  if (const auto* s = get("spec")) {
    if (get("kind")) throw ConfigError("give either 'spec' or 'kind', not both");
    if (!get("sigma2")) return parse_spec(*s);
    return parse_spec(*s + "@" + *get("sigma2"));
  }
  const auto* kind_p = get("kind");
  if (!kind_p) throw ConfigError("config has no process: set 'spec' or 'kind'");
  const std::string& kind = *kind_p;
  if (kind == "whitenoise") return ProcessSpec::white_noise(sigma2);
  if (kind == "arma" || kind == "ar" || kind == "ma") {
    const auto phi = get("phi") ? parse_number_list(*get("phi")) : std::vector<double>{};
    const auto theta = get("theta") ? parse_number_list(*get("theta")) : std::vector<double>{};
    return ProcessSpec::arma(phi, theta, sigma2);
  }
  if (kind == "expdecay") {
    return ProcessSpec::exponential_decay(to_double(need("c", kind), "c"),
                                          to_double(need("rho", kind), "rho"), sigma2);
  }
  if (kind == "algdecay") {
    return ProcessSpec::algebraic_decay(to_double(need("c", kind), "c"),
                                        to_double(need("gamma", kind), "gamma"), sigma2);
  }
  if (kind == "coeffs") return ProcessSpec::explicit_ar(parse_number_list(need("coeffs", kind)), sigma2);
  throw ConfigError("unknown process kind '" + kind + "'");
}

std::vector<Cell> parse_cells(const std::string& text) {
  std::string s = text;
  for (char& ch : s) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(s);
  std::vector<Cell> out;
  std::string tok;
  while (in >> tok) {
    Cell c;
    const auto slash = tok.find('/');
    c.n = to_integer(tok.substr(0, slash), "cell n");
    if (c.n < 2) throw ConfigError("cell n must be at least 2, got '" + tok + "'");
    c.max_order = slash == std::string::npos
                      ? max_order_rule(c.n)
                      : static_cast<int>(to_integer(tok.substr(slash + 1), "cell K_n"));
    out.push_back(c);
  }
  if (out.empty()) throw ConfigError("empty cell list");
  return out;
}

ExperimentConfig experiment_from_config(const KeyValues& kv) {
  static const char* const known[] = {"spec",  "kind",   "phi",      "theta",    "sigma2",
                                      "c",     "rho",    "gamma",    "coeffs",   "cells",
                                      "reps",  "seed",   "master_seed", "criteria", "mode",
                                      "baseline", "jobs"};
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key '" + key + "'");
  }
  if (kv.count("seed") && kv.count("master_seed")) {
    throw ConfigError("give either 'seed' or 'master_seed', not both");
  }

  ExperimentConfig c;
  c.spec = spec_from_config(kv);
  if (auto it = kv.find("cells"); it != kv.end()) c.cells = parse_cells(it->second);
  if (auto it = kv.find("reps"); it != kv.end()) {
    const auto r = to_integer(it->second, "reps");
    if (r < 1) throw ConfigError("reps must be at least 1");
    c.reps = static_cast<std::size_t>(r);
  }
  for (const char* key : {"seed", "master_seed"}) {
    if (auto it = kv.find(key); it != kv.end()) {
      c.master_seed = static_cast<std::uint64_t>(to_integer(it->second, key));
    }
  }
  if (auto it = kv.find("criteria"); it != kv.end()) c.criteria = parse_criteria_list(it->second);
  if (auto it = kv.find("mode"); it != kv.end()) c.mode = parse_mode(it->second);
  if (auto it = kv.find("baseline"); it != kv.end()) {
    const auto cells = parse_cells(it->second);
    if (cells.size() != 1) throw ConfigError("baseline must be a single cell");
    c.baseline_cell = cells.front();
  }
  if (auto it = kv.find("jobs"); it != kv.end()) {
    const auto j = to_integer(it->second, "jobs");
    if (j < 1) throw ConfigError("jobs must be at least 1");
    c.jobs = static_cast<unsigned>(j);
  }
  validate(c);
  return c;
}

}  // namespace arpe
