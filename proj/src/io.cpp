#include "rocover/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rocover/format.hpp"

namespace rocover {
namespace {

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int line_number = 0;

  // Next non-blank line, or nullopt at end of input.
  std::optional<std::string_view> next() {
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view line;
      if (eol == std::string_view::npos) {
        line = text.substr(pos);
        pos = text.size();
      } else {
        line = text.substr(pos, eol - pos);
        pos = eol + 1;
      }
      ++line_number;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) return line;
    }
    return std::nullopt;
  }
};

double parse_double_at(std::string_view token, int line) {
  try {
    return parse_double(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

long long parse_int_at(std::string_view token, int line) {
  try {
    return parse_int(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

std::vector<double> parse_costs_line(std::optional<std::string_view> line, int line_number,
                                     long long m) {
  if (!line) throw ParseError(line_number + 1, "expected costs line");
  auto tokens = split_ws(*line);
  if (tokens.empty() || tokens[0] != "costs") {
    throw ParseError(line_number, "expected 'costs <c_1> ... <c_m>'");
  }
  if (static_cast<long long>(tokens.size()) - 1 != m) {
    throw ParseError(line_number, "expected " + std::to_string(m) + " costs, got " +
                                      std::to_string(tokens.size() - 1));
  }
  std::vector<double> costs;
  costs.reserve(static_cast<std::size_t>(m));
  for (std::size_t t = 1; t < tokens.size(); ++t) {
    costs.push_back(parse_double_at(tokens[t], line_number));
  }
  return costs;
}

// Parses "<keyword> <index>:" and the trailing payload tokens.
struct IndexedLine {
  long long index;
  std::vector<std::string_view> payload;
};

std::optional<IndexedLine> match_indexed(std::string_view line, std::string_view keyword,
                                         int line_number) {
  auto tokens = split_ws(line);
  if (tokens.empty() || tokens[0] != keyword) return std::nullopt;
  if (tokens.size() < 2 || tokens[1].empty() || tokens[1].back() != ':') {
    throw ParseError(line_number, "expected '" + std::string(keyword) + " <id>:'");
  }
  std::string_view id = tokens[1].substr(0, tokens[1].size() - 1);
  IndexedLine out;
  out.index = parse_int_at(id, line_number);
  out.payload.assign(tokens.begin() + 2, tokens.end());
  return out;
}

SetSystem parse_setcover_body(LineReader& reader, std::optional<std::string_view>* leftover,
                              int* leftover_line) {
  auto size_line = reader.next();
  if (!size_line) throw ParseError(reader.line_number + 1, "expected 'n <n> m <m>'");
  auto tokens = split_ws(*size_line);
  if (tokens.size() != 4 || tokens[0] != "n" || tokens[2] != "m") {
    throw ParseError(reader.line_number, "expected 'n <n> m <m>'");
  }
  long long n = parse_int_at(tokens[1], reader.line_number);
  long long m = parse_int_at(tokens[3], reader.line_number);
  if (n < 0 || m < 0 || n > (1LL << 31) || m > (1LL << 31)) {
    throw ParseError(reader.line_number, "n and m must be nonnegative");
  }

  SetSystem sys;
  sys.n = static_cast<int>(n);
  sys.m = static_cast<int>(m);
  auto costs_line = reader.next();
  sys.costs = parse_costs_line(costs_line, reader.line_number, m);
  sys.members.assign(static_cast<std::size_t>(m), {});

  for (long long j = 1; j <= m; ++j) {
    auto line = reader.next();
    if (!line) throw ParseError(reader.line_number + 1, "expected 'set " + std::to_string(j) + ":'");
    auto indexed = match_indexed(*line, "set", reader.line_number);
    if (!indexed) throw ParseError(reader.line_number, "expected 'set " + std::to_string(j) + ":'");
    if (indexed->index != j) {
      throw ParseError(reader.line_number, "set ids must be ascending; expected " +
                                               std::to_string(j) + ", got " +
                                               std::to_string(indexed->index));
    }
    auto& members = sys.members[static_cast<std::size_t>(j - 1)];
    members.reserve(indexed->payload.size());
    for (auto token : indexed->payload) {
      long long e = parse_int_at(token, reader.line_number);
      if (e < 1 || e > n) {
        throw ParseError(reader.line_number, "element id " + std::to_string(e) +
                                                 " out of range [1, " + std::to_string(n) + "]");
      }
      members.push_back(static_cast<int>(e - 1));
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw ParseError(reader.line_number, "duplicate element in set " + std::to_string(j));
    }
  }
  *leftover = reader.next();
  *leftover_line = reader.line_number;
  return sys;
}

LoadedInstance parse_setcover(LineReader& reader) {
  std::optional<std::string_view> leftover;
  int leftover_line = 0;
  SetSystem sys = parse_setcover_body(reader, &leftover, &leftover_line);
  if (!leftover) return sys;

  // Optional batch suffix turns the file into a batched instance.
  BatchedInstance batched;
  batched.base = std::move(sys);
  long long expected = 1;
  auto line = leftover;
  int line_number = leftover_line;
  while (line) {
    auto indexed = match_indexed(*line, "batch", line_number);
    if (!indexed) throw ParseError(line_number, "unexpected content after set lines");
    if (indexed->index != expected) {
      throw ParseError(line_number, "batch ids must be ascending; expected " +
                                        std::to_string(expected) + ", got " +
                                        std::to_string(indexed->index));
    }
    std::vector<int> batch;
    batch.reserve(indexed->payload.size());
    for (auto token : indexed->payload) {
      long long e = parse_int_at(token, line_number);
      if (e < 1 || e > batched.base.n) {
        throw ParseError(line_number, "element id " + std::to_string(e) + " out of range [1, " +
                                          std::to_string(batched.base.n) + "]");
      }
      batch.push_back(static_cast<int>(e - 1));
    }
    std::sort(batch.begin(), batch.end());
    batched.batches.push_back(std::move(batch));
    ++expected;
    line = reader.next();
    line_number = reader.line_number;
  }
  return batched;
}

CipInstance parse_cip(LineReader& reader) {
  auto size_line = reader.next();
  if (!size_line) throw ParseError(reader.line_number + 1, "expected 'rows <n> cols <m>'");
  auto tokens = split_ws(*size_line);
  if (tokens.size() != 4 || tokens[0] != "rows" || tokens[2] != "cols") {
    throw ParseError(reader.line_number, "expected 'rows <n> cols <m>'");
  }
  long long n = parse_int_at(tokens[1], reader.line_number);
  long long m = parse_int_at(tokens[3], reader.line_number);
  if (n < 0 || m < 0 || n > (1LL << 31) || m > (1LL << 31)) {
    throw ParseError(reader.line_number, "rows and cols must be nonnegative");
  }

  CipInstance inst;
  inst.n = static_cast<int>(n);
  inst.m = static_cast<int>(m);
  auto costs_line = reader.next();
  inst.costs = parse_costs_line(costs_line, reader.line_number, m);
  inst.rows.assign(static_cast<std::size_t>(n), {});

  for (long long i = 1; i <= n; ++i) {
    auto line = reader.next();
    if (!line) throw ParseError(reader.line_number + 1, "expected 'row " + std::to_string(i) + ":'");
    auto indexed = match_indexed(*line, "row", reader.line_number);
    if (!indexed) throw ParseError(reader.line_number, "expected 'row " + std::to_string(i) + ":'");
    if (indexed->index != i) {
      throw ParseError(reader.line_number, "row ids must be ascending; expected " +
                                               std::to_string(i) + ", got " +
                                               std::to_string(indexed->index));
    }
    auto& row = inst.rows[static_cast<std::size_t>(i - 1)];
    row.reserve(indexed->payload.size());
    for (auto token : indexed->payload) {
      auto parts = split_char(token, ':');
      if (parts.size() != 2) {
        throw ParseError(reader.line_number, "expected '<col>:<coeff>', got '" +
                                                 std::string(token) + "'");
      }
      long long col = parse_int_at(parts[0], reader.line_number);
      if (col < 1 || col > m) {
        throw ParseError(reader.line_number, "column id " + std::to_string(col) +
                                                 " out of range [1, " + std::to_string(m) + "]");
      }
      double coeff = parse_double_at(parts[1], reader.line_number);
      row.push_back(CipRowEntry{static_cast<int>(col - 1), coeff});
    }
    std::sort(row.begin(), row.end(),
              [](const CipRowEntry& a, const CipRowEntry& b) { return a.col < b.col; });
    for (std::size_t t = 1; t < row.size(); ++t) {
      if (row[t].col == row[t - 1].col) {
        throw ParseError(reader.line_number, "duplicate column in row " + std::to_string(i));
      }
    }
  }
  if (auto extra = reader.next()) {
    throw ParseError(reader.line_number, "unexpected content after row lines");
  }
  return inst;
}

void append_setcover_body(std::string* out, const SetSystem& sys) {
  *out += "SETCOVER v1\n";
  *out += "n " + std::to_string(sys.n) + " m " + std::to_string(sys.m) + "\n";
  *out += "costs";
  for (double c : sys.costs) {
    *out += ' ';
    *out += format_double(c);
  }
  *out += '\n';
  for (int j = 0; j < sys.m; ++j) {
    *out += "set " + std::to_string(j + 1) + ":";
    std::vector<int> members = sys.members[static_cast<std::size_t>(j)];
    std::sort(members.begin(), members.end());
    for (int e : members) *out += ' ' + std::to_string(e + 1);
    *out += '\n';
  }
}

}  // namespace

LoadedInstance parse_instance(std::string_view text) {
  LineReader reader{text};
  auto header = reader.next();
  if (!header) throw ParseError(1, "empty instance file");
  auto tokens = split_ws(*header);
  if (tokens.size() == 2 && tokens[0] == "SETCOVER") {
    if (tokens[1] != "v1") {
      throw ParseError(reader.line_number,
                       "unsupported SETCOVER version '" + std::string(tokens[1]) + "'");
    }
    return parse_setcover(reader);
  }
  if (tokens.size() == 2 && tokens[0] == "CIP") {
    if (tokens[1] != "v1") {
      throw ParseError(reader.line_number,
                       "unsupported CIP version '" + std::string(tokens[1]) + "'");
    }
    return parse_cip(reader);
  }
  throw ParseError(reader.line_number, "unrecognized header; expected 'SETCOVER v1' or 'CIP v1'");
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_text_file(path));
}

std::string serialize_instance(const SetSystem& sys) {
  std::string out;
  append_setcover_body(&out, sys);
  return out;
}

std::string serialize_instance(const BatchedInstance& inst) {
  std::string out;
  append_setcover_body(&out, inst.base);
  for (std::size_t b = 0; b < inst.batches.size(); ++b) {
    out += "batch " + std::to_string(b + 1) + ":";
    std::vector<int> batch = inst.batches[b];
    std::sort(batch.begin(), batch.end());
    for (int e : batch) out += ' ' + std::to_string(e + 1);
    out += '\n';
  }
  return out;
}

std::string serialize_instance(const CipInstance& inst) {
  std::string out;
  out += "CIP v1\n";
  out += "rows " + std::to_string(inst.n) + " cols " + std::to_string(inst.m) + "\n";
  out += "costs";
  for (double c : inst.costs) {
    out += ' ';
    out += format_double(c);
  }
  out += '\n';
  for (int i = 0; i < inst.n; ++i) {
    out += "row " + std::to_string(i + 1) + ":";
    std::vector<CipRowEntry> row = inst.rows[static_cast<std::size_t>(i)];
    std::sort(row.begin(), row.end(),
              [](const CipRowEntry& a, const CipRowEntry& b) { return a.col < b.col; });
    for (const auto& entry : row) {
      out += ' ' + std::to_string(entry.col + 1) + ':' + format_double(entry.coeff);
    }
    out += '\n';
  }
  return out;
}

std::string serialize_instance(const LoadedInstance& inst) {
  return std::visit([](const auto& x) { return serialize_instance(x); }, inst);
}

void save_instance(const std::filesystem::path& path, const LoadedInstance& inst) {
  write_text_file(path, serialize_instance(inst));
}

std::filesystem::path meta_path_for(const std::filesystem::path& instance_path) {
  std::filesystem::path p = instance_path;
  p += ".meta";
  return p;
}

void save_meta(const std::filesystem::path& instance_path, const MetaJson& meta) {
  write_text_file(meta_path_for(instance_path), meta.dump(2) + "\n");
}

std::optional<MetaJson> load_meta_for(const std::filesystem::path& instance_path) {
  auto p = meta_path_for(instance_path);
  if (!std::filesystem::exists(p)) return std::nullopt;
  return MetaJson::parse(read_text_file(p));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace rocover
