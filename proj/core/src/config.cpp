#include "dualshear/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dualshear/util.hpp"

namespace dsh {

KVConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  KVConfig kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

std::string canonical_config(const KVConfig& kv) {
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << "=" << v << ";";
  return os.str();
}

std::string config_hash(const KVConfig& kv) { return hex64(fnv1a64(canonical_config(kv))); }

SystemConfig system_config_from(const KVConfig& kv) {
  SystemConfig cfg;
  auto geti = [&kv](const char* key, int dflt) {
    auto it = kv.find(key);
    return it == kv.end() || it->second == "auto" ? dflt : std::stoi(it->second);
  };
  auto getd = [&kv](const char* key, double dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : std::stod(it->second);
  };
  cfg.n = geti("n", cfg.n);
  cfg.gen_order = geti("k", cfg.gen_order);
  cfg.win_order = geti("kg", cfg.win_order);
  cfg.jmax = geti("jmax", cfg.jmax);
  cfg.j_cap = geti("J", cfg.j_cap);
  cfg.p_cap = geti("P", cfg.p_cap);
  cfg.depth = geti("depth", cfg.depth);
  cfg.support_threshold = getd("support_threshold", cfg.support_threshold);
  cfg.gram_tol = getd("gram_tol", cfg.gram_tol);
  cfg.threads = static_cast<unsigned>(geti("threads", 0));
  return cfg;
}

}  // namespace dsh
