#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "rocover/instance.hpp"

namespace rocover {

// Parse failure with the 1-based line it was detected on.
struct ParseError : Error {
  ParseError(int line_number, const std::string& message)
      : Error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
  int line;
};

using LoadedInstance = std::variant<SetSystem, CipInstance, BatchedInstance>;

// Text formats (UTF-8, LF, ids 1-based on disk):
//
//   SETCOVER v1          |  CIP v1
//   n <n> m <m>          |  rows <n> cols <m>
//   costs <c_1> ... <c_m>|  costs <c_1> ... <c_m>
//   set <j>: <e> <e> ... |  row <i>: <j>:<a_ij> ...
//
// A batched instance is a SETCOVER body followed by "batch <i>: ..." lines
// that partition the elements. Serialization is canonical (sorted members,
// shortest round-trip float form), so save(load(f)) == save(x) bytes.
LoadedInstance parse_instance(std::string_view text);
LoadedInstance load_instance(const std::filesystem::path& path);

std::string serialize_instance(const SetSystem& sys);
std::string serialize_instance(const CipInstance& inst);
std::string serialize_instance(const BatchedInstance& inst);
std::string serialize_instance(const LoadedInstance& inst);

void save_instance(const std::filesystem::path& path, const LoadedInstance& inst);

// Generator sidecar: "<instance path>.meta", JSON with family, parameters,
// seed, and whatever optimum facts the construction guarantees.
using MetaJson = nlohmann::ordered_json;

std::filesystem::path meta_path_for(const std::filesystem::path& instance_path);
void save_meta(const std::filesystem::path& instance_path, const MetaJson& meta);
std::optional<MetaJson> load_meta_for(const std::filesystem::path& instance_path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace rocover
