// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/manifest.hpp"

#include <cinttypes>
#include <cstdio>

namespace gcpreset {

std::string start_to_string(const VelocityStart& start) {
  if (!start.is_random()) return start.fixed_index() == 1 ? "v1" : "v2";
  char buf[40];
  std::snprintf(buf, sizeof buf, "random:%.17g", start.q());
  return buf;
}

std::string RunManifest::canonical_json() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"tool\":\"%s\",\"tool_version\":\"%s\",\"command\":\"%s\","
                "\"lambda\":%.17g,\"xi\":%.17g,\"v1\":%.17g,\"v2\":%.17g,"
                "\"start\":\"%s\",\"seed\":%" PRIu64 ",\"n_paths\":%" PRIu64 "}",
                kToolName, kToolVersion, command.c_str(), params.lambda(), params.xi(),
                params.v1(), params.v2(), start_to_string(start).c_str(), seed, n_paths);
  return buf;
}

std::string RunManifest::hash() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(canonical_json()));
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace gcpreset
