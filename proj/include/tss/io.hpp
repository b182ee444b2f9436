#pragma once

#include <zlib.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tss/graph.hpp"

namespace tss {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reads a whole file, transparently inflating gzip content (detected by the
/// 0x1f 0x8b magic, not by extension).
inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open " + path.string());
  std::array<unsigned char, 2> magic{};
  probe.read(reinterpret_cast<char*>(magic.data()), 2);
  bool gz = probe.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
  if (!gz) {
    probe.clear();
    probe.seekg(0);
    std::ostringstream buf;
    buf << probe.rdbuf();
    if (probe.bad()) throw IoError("read failed: " + path.string());
    return std::move(buf).str();
  }
  probe.close();

  std::unique_ptr<gzFile_s, decltype(&gzclose)> gzf(gzopen(path.c_str(), "rb"), &gzclose);
  if (!gzf) throw IoError("cannot open " + path.string());
  std::string out;
  std::array<char, 1 << 16> chunk{};
  for (;;) {
    int n = gzread(gzf.get(), chunk.data(), static_cast<unsigned>(chunk.size()));
    if (n < 0) {
      int err = 0;
      throw IoError("gzip error in " + path.string() + ": " + gzerror(gzf.get(), &err));
    }
    if (n == 0) break;
    out.append(chunk.data(), static_cast<std::size_t>(n));
  }
  return out;
}

inline Graph load_graph(const std::filesystem::path& path, ParseStats* stats = nullptr) {
  std::string text = read_file(path);
  try {
    return parse_edge_list(text, stats);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

/// `rule` is either "majority" or a path to a threshold file.
inline Thresholds load_thresholds(const Graph& g, const std::string& rule) {
  if (rule.empty() || rule == "majority") return majority_thresholds(g);
  return thresholds_from_file(g, read_file(rule));
}

}  // namespace tss
