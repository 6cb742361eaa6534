// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "gcpreset/params.hpp"

namespace gcpreset {

inline constexpr const char* kToolName = "gcpreset";
inline constexpr const char* kToolVersion = "0.1.0";

/// Reproducibility record. The canonical serialization covers exactly the
/// fields that determine output bytes (parameters, start, command, seed,
/// path count, tool version); worker count and wall-clock timestamp are
/// carried for logging but intentionally excluded, since outputs are
/// worker-count independent by contract.
struct RunManifest {
  MotionParams params;
  VelocityStart start;
  std::string command;
  std::uint64_t seed = 0;
  std::uint64_t n_paths = 0;
  unsigned workers = 1;
  std::string timestamp;  // informational only

  /// Canonical JSON with fixed key order and 17-significant-digit floats.
  std::string canonical_json() const;

  /// FNV-1a 64-bit hash of canonical_json(), as 16 hex digits.
  std::string hash() const;
};

std::string start_to_string(const VelocityStart& start);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gcpreset
