#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfacq/experiment.hpp"
#include "cfacq/objects.hpp"

namespace cfacq {

inline constexpr const char* kToolVersion = "cfacq 0.1.0";

enum class ConfigErrorCode {
  schema,    // unknown key, bad syntax, unparsable value
  value,     // out-of-range value (N = 0, negative spacing, ...)
  geometry,  // arm-length constraint d = d1 + d2 violated
  sampling,  // a propagation leg fails Nyquist validation
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorCode c, const std::string& message)
      : std::runtime_error(message), code(c) {}
  const char* code_name() const;

  ConfigErrorCode code;
};

/// A fully resolved run description: the experiment plus the object recipe
/// it was sampled from, and the canonical config document that produced it.
struct RunConfig {
  ExperimentConfig experiment;
  ConceivedObjectParams object;
  std::string canonical_text;  // sorted keys, normalized values
  std::string digest;          // 16-hex FNV-1a of canonical_text
};

/// Parse a flat "key = value" document ('#' comments, blank lines ignored).
/// Missing keys take the built-in defaults; unknown keys are schema errors.
/// overrides are applied after the document (used for CLI flags).
RunConfig parse_config(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

RunConfig default_config();

/// The built-in key/value defaults, e.g. for emitting a template document.
std::map<std::string, std::string> default_config_map();

struct RunManifest {
  std::string config_digest;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  double wall_time_s = 0.0;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace cfacq
