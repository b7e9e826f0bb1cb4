#include "hilfer/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hilfer/errors.hpp"

namespace hilfer {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& field, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
  if (s.empty() || ec != std::errc() || ptr != last)
    throw ConfigError(field, "expected a decimal number, got '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& field, std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(parse_number(field, std::string_view(s).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"problem", {"name", "catalog"}},
      {"order", {"alpha", "beta"}},
      {"psi", {"kind", "shift", "sigma", "nodes", "values", "derivs"}},
      {"domain", {"b", "r"}},
      {"history", {"phi"}},
      {"rhs", {"f"}},
      {"delay", {"h"}},
      {"impulses", {}},
      {"initial", {"u0_weighted"}},
      {"lipschitz", {"K", "L_f", "L_J"}},
  };
  return s;
}

// impulses keys are time_<k> / map_<k>, k = 1, 2, ...
std::optional<std::pair<bool, std::size_t>> impulse_key(const std::string& key) {
  bool is_time;
  std::string_view rest;
  if (key.rfind("time_", 0) == 0) {
    is_time = true;
    rest = std::string_view(key).substr(5);
  } else if (key.rfind("map_", 0) == 0) {
    is_time = false;
    rest = std::string_view(key).substr(4);
  } else {
    return std::nullopt;
  }
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size() || k == 0) return std::nullopt;
  return std::make_pair(is_time, k);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

}  // namespace

ProblemConfig parse_problem_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }

  std::set<std::string> present;
  for (const auto& [section, body] : tree) {
    auto it = schema().find(section);
    if (body.empty() && !body.data().empty())
      throw ConfigError(section, "key outside of any section");
    if (it == schema().end()) throw ConfigError(section, "unknown section");
    present.insert(section);
    for (const auto& [key, value] : body) {
      if (section == "impulses") {
        if (!impulse_key(key)) throw ConfigError("impulses." + key, "unknown key (expected time_<k> or map_<k>)");
      } else if (!it->second.contains(key)) {
        throw ConfigError(section + "." + key, "unknown key");
      }
    }
  }

  if (present.contains("problem")) {
    if (auto cat = tree.get_child("problem").get_optional<std::string>("catalog")) {
      if (present.size() > 1) throw ConfigError("problem.catalog", "cannot be combined with other sections");
      auto cfg = catalog_config(trim(*cat));
      if (auto nm = tree.get_child("problem").get_optional<std::string>("name")) cfg.name = trim(*nm);
      return cfg;
    }
  }

  auto require = [&](const std::string& section, const std::string& key) -> std::string {
    auto v = tree.get_child_optional(section);
    if (!v) throw ConfigError(section, "missing section");
    auto s = v->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!s) throw ConfigError(section + "." + key, "missing key");
    return trim(s->data());
  };
  auto optional = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    auto v = tree.get_child_optional(section);
    if (!v) return std::nullopt;
    auto s = v->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!s) return std::nullopt;
    return trim(s->data());
  };

  ProblemConfig cfg;
  if (auto nm = optional("problem", "name")) cfg.name = *nm;
  cfg.alpha = parse_number("order.alpha", require("order", "alpha"));
  cfg.beta = parse_number("order.beta", require("order", "beta"));

  cfg.psi_kind = require("psi", "kind");
  if (auto v = optional("psi", "shift")) cfg.psi_shift = parse_number("psi.shift", *v);
  if (auto v = optional("psi", "sigma")) cfg.psi_sigma = parse_number("psi.sigma", *v);
  if (cfg.psi_kind == "tabulated") {
    cfg.psi_nodes = parse_list("psi.nodes", require("psi", "nodes"));
    cfg.psi_values = parse_list("psi.values", require("psi", "values"));
    cfg.psi_derivs = parse_list("psi.derivs", require("psi", "derivs"));
  }

  cfg.b = parse_number("domain.b", require("domain", "b"));
  cfg.r = parse_number("domain.r", require("domain", "r"));
  cfg.history = require("history", "phi");
  cfg.rhs = require("rhs", "f");
  cfg.delay = require("delay", "h");
  cfg.u0_weighted = parse_number("initial.u0_weighted", require("initial", "u0_weighted"));

  if (auto imp = tree.get_child_optional("impulses")) {
    std::map<std::size_t, ProblemConfig::ImpulseEntry> entries;
    std::map<std::size_t, int> seen;
    for (const auto& [key, value] : *imp) {
      auto [is_time, k] = *impulse_key(key);
      if (is_time)
        entries[k].time = parse_number("impulses." + key, value.data());
      else
        entries[k].map = trim(value.data());
      seen[k] |= is_time ? 1 : 2;
    }
    std::size_t expected = 1;
    for (const auto& [k, mask] : seen) {
      if (k != expected) throw ConfigError("impulses.time_" + std::to_string(expected), "missing impulse");
      if (mask != 3)
        throw ConfigError((mask == 1 ? "impulses.map_" : "impulses.time_") + std::to_string(k), "missing key");
      ++expected;
    }
    for (auto& [k, e] : entries) cfg.impulses.push_back(std::move(e));
  }

  if (present.contains("lipschitz")) {
    LipschitzData L;
    L.K = parse_number("lipschitz.K", require("lipschitz", "K"));
    L.L_f = parse_number("lipschitz.L_f", require("lipschitz", "L_f"));
    L.L_J = parse_list("lipschitz.L_J", optional("lipschitz", "L_J").value_or(""));
    cfg.lipschitz = std::move(L);
  }
  return cfg;
}

ProblemConfig load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_config(ss.str());
}

std::string format_problem_config(const ProblemConfig& cfg) {
  std::ostringstream os;
  if (!cfg.name.empty()) os << "[problem]\nname = " << cfg.name << "\n\n";
  os << "[order]\nalpha = " << fmt(cfg.alpha) << "\nbeta = " << fmt(cfg.beta) << "\n\n";
  os << "[psi]\nkind = " << cfg.psi_kind << "\n";
  if (cfg.psi_kind == "log-shifted") os << "shift = " << fmt(cfg.psi_shift) << "\n";
  if (cfg.psi_kind == "power") os << "sigma = " << fmt(cfg.psi_sigma) << "\n";
  if (cfg.psi_kind == "tabulated")
    os << "nodes = " << fmt_list(cfg.psi_nodes) << "\nvalues = " << fmt_list(cfg.psi_values)
       << "\nderivs = " << fmt_list(cfg.psi_derivs) << "\n";
  os << "\n[domain]\nb = " << fmt(cfg.b) << "\nr = " << fmt(cfg.r) << "\n\n";
  os << "[history]\nphi = " << cfg.history << "\n\n";
  os << "[rhs]\nf = " << cfg.rhs << "\n\n";
  os << "[delay]\nh = " << cfg.delay << "\n\n";
  if (!cfg.impulses.empty()) {
    os << "[impulses]\n";
    for (std::size_t k = 0; k < cfg.impulses.size(); ++k)
      os << "time_" << k + 1 << " = " << fmt(cfg.impulses[k].time) << "\nmap_" << k + 1 << " = "
         << cfg.impulses[k].map << "\n";
    os << "\n";
  }
  os << "[initial]\nu0_weighted = " << fmt(cfg.u0_weighted) << "\n";
  if (cfg.lipschitz) {
    os << "\n[lipschitz]\nK = " << fmt(cfg.lipschitz->K) << "\nL_f = " << fmt(cfg.lipschitz->L_f)
       << "\nL_J = " << fmt_list(cfg.lipschitz->L_J) << "\n";
  }
  return os.str();
}

namespace {

// Delay, impulse and implicit rhs example on [0, 1] with one impulse at 1/3.
ProblemConfig example_problem(std::string name, double alpha, double beta, double u0) {
  ProblemConfig cfg;
  cfg.name = std::move(name);
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.psi_kind = "identity";
  cfg.b = 1.0;
  cfg.r = 1.0;
  cfg.history = "0";
  cfg.rhs = "dpsi^(1 - rho) / (50 * exp(dpsi) * (1 + abs(u) + abs(u_delayed))) + sat(abs(w), 15)";
  cfg.delay = "t - 0.5";
  cfg.impulses.push_back({1.0 / 3.0, "dpsi^(1 - rho) * sat(abs(u), 7)"});
  cfg.u0_weighted = u0;
  cfg.lipschitz = LipschitzData{1.0 / 50.0, 1.0 / 15.0, {1.0 / 7.0}};
  return cfg;
}

}  // namespace

ProblemConfig catalog_config(std::string_view name) {
  if (name == "paper-ex-caputo") return example_problem("paper-ex-caputo", 0.5, 1.0, 0.0);
  if (name == "paper-ex-rl") return example_problem("paper-ex-rl", 1.0 / 3.0, 0.0, 1.0);
  if (name == "linear-caputo") {
    // u' of order 1/2 equals u, u(0) = 1; exact solution E_{1/2}(t^{1/2}).
    ProblemConfig cfg;
    cfg.name = "linear-caputo";
    cfg.alpha = 0.5;
    cfg.beta = 1.0;
    cfg.b = 1.0;
    cfg.r = 0.0;
    cfg.history = "1";
    cfg.rhs = "u";
    cfg.delay = "t";
    cfg.u0_weighted = 1.0;
    cfg.lipschitz = LipschitzData{1.0, 0.01, {}};
    return cfg;
  }
  throw ConfigError("problem.catalog", "unknown catalog problem '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() { return {"paper-ex-caputo", "paper-ex-rl", "linear-caputo"}; }

}  // namespace hilfer
