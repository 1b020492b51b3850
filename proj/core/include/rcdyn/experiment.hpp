#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcdyn/boundary.hpp"
#include "rcdyn/lattice.hpp"

namespace rcdyn {

// A spec that fails schema validation: the message is safe to surface as the
// machine-readable error payload.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// "free" | "wired" | {"sides":[...]} | {"blocks":[[[x,y],...],...]}
BoundaryCondition parse_bc(const Lattice& lat, const nlohmann::json& spec);
std::string bc_label(const nlohmann::json& spec);

// ["h", x, y] or ["v", x, y] -> edge index
int parse_edge(const Lattice& lat, const nlohmann::json& spec);

// FNV-1a over the canonical (sorted-key) dump; names the run directory
std::string spec_hash(const nlohmann::json& spec);

// temp file + rename in the destination directory
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

// fixed-format float for byte-stable CSV/JSON output
std::string format_double(double x);

struct RunOutput {
  std::filesystem::path dir;
  std::vector<std::string> files;  // names relative to dir
};

// Dispatch on spec["kind"]; writes the run directory
// <out_root>/<kind>-<hash> and returns the produced file list. Throws
// SpecError on schema violations.
RunOutput run_experiment(const nlohmann::json& spec,
                         const std::filesystem::path& out_root);

}  // namespace rcdyn
