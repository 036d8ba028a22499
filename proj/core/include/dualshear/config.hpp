#pragma once

#include <map>
#include <string>

#include "dualshear/system.hpp"

namespace dsh {

/// key = value text config (# comments). Keys: n, k, kg, jmax, J, P, depth,
/// support_threshold, gram_tol, threads.
using KVConfig = std::map<std::string, std::string>;

KVConfig parse_config_file(const std::string& path);
std::string canonical_config(const KVConfig& kv);
std::string config_hash(const KVConfig& kv);
SystemConfig system_config_from(const KVConfig& kv);

}  // namespace dsh
