#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hed/errors.hpp"
#include "hed/stream.hpp"

namespace hed::io {

// Raised for files that cannot be parsed at all (bad header, non-numeric
// fields, broken JSON). Invariant violations on parseable content raise
// hed::Error instead, so callers can distinguish usage errors from data
// errors.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

struct StreamMeta {
  int t_start = 0;
  std::string detector;
  std::optional<double> lambda_h;
};

struct LoadedStream {
  ProbabilityStream stream;
  StreamMeta meta;
};

// Shortest-exact serialization of a double: 17 significant digits guarantee
// an identical value on re-read.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Sidecar metadata path for a stream file: the extension is replaced by
// ".meta.json" (streams/slds.csv -> streams/slds.meta.json).
inline std::filesystem::path sidecar_path(const std::filesystem::path& stream_path) {
  std::filesystem::path p = stream_path;
  p.replace_extension(".meta.json");
  return p;
}

inline void write_stream(const std::filesystem::path& path, const ProbabilityStream& stream,
                         const StreamMeta& meta) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) {
    throw ParseError("cannot open stream file for writing: " + path.string());
  }
  csv << "t,p\n";
  for (std::size_t t = 0; t < stream.probs().size(); ++t) {
    csv << t << ',' << format_double(stream.probs()[t]) << '\n';
  }

  nlohmann::ordered_json sidecar;
  sidecar["t_start"] = meta.t_start;
  sidecar["detector"] = meta.detector;
  if (meta.lambda_h.has_value()) {
    sidecar["lambda_h"] = *meta.lambda_h;
  }
  std::ofstream mj(sidecar_path(path), std::ios::binary);
  if (!mj) {
    throw ParseError("cannot open sidecar for writing: " + sidecar_path(path).string());
  }
  mj << sidecar.dump(2) << '\n';
}

inline LoadedStream read_stream(const std::filesystem::path& path) {
  std::ifstream csv(path, std::ios::binary);
  if (!csv) {
    throw ParseError("cannot open stream file: " + path.string());
  }
  std::string line;
  if (!std::getline(csv, line) || (line != "t,p" && line != "t,p\r")) {
    throw ParseError("malformed stream file (expected header 't,p'): " + path.string());
  }

  std::vector<double> probs;
  std::size_t row = 0;
  while (std::getline(csv, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("malformed stream row " + std::to_string(row) + ": '" + line + "'");
    }
    long long t_val = 0;
    const std::string_view t_field(line.data(), comma);
    auto [tp, terr] = std::from_chars(t_field.begin(), t_field.end(), t_val);
    if (terr != std::errc{} || tp != t_field.end()) {
      throw ParseError("malformed time index in row " + std::to_string(row));
    }
    const std::string p_field = line.substr(comma + 1);
    char* pend = nullptr;
    const double p_val = std::strtod(p_field.c_str(), &pend);
    if (pend == p_field.c_str() || *pend != '\0') {
      throw ParseError("malformed probability in row " + std::to_string(row));
    }
    if (t_val != static_cast<long long>(row)) {
      throw InvalidTimeGrid(
          "time grid invariant violated: t must increase by 1 from 0 (row " +
          std::to_string(row) + " carries t=" + std::to_string(t_val) + ")");
    }
    probs.push_back(p_val);
    ++row;
  }

  const std::filesystem::path meta_path = sidecar_path(path);
  std::ifstream mj(meta_path, std::ios::binary);
  if (!mj) {
    throw ParseError("missing sidecar metadata: " + meta_path.string());
  }
  nlohmann::json sidecar;
  try {
    mj >> sidecar;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed sidecar " + meta_path.string() + ": " + e.what());
  }
  if (!sidecar.contains("t_start") || !sidecar["t_start"].is_number_integer()) {
    throw ParseError("sidecar missing integer field 't_start': " + meta_path.string());
  }

  StreamMeta meta;
  meta.t_start = sidecar["t_start"].get<int>();
  if (sidecar.contains("detector")) meta.detector = sidecar["detector"].get<std::string>();
  if (sidecar.contains("lambda_h")) meta.lambda_h = sidecar["lambda_h"].get<double>();

  return LoadedStream{ProbabilityStream(std::move(probs), meta.t_start), meta};
}

// FNV-1a 64-bit content digest, reported as 16 hex chars. Used to make
// report inputs traceable, not for security.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

inline std::string digest_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

inline std::string digest_file_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open file for digest: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return digest_hex(buf.str());
}

}  // namespace hed::io
