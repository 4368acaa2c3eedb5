#pragma once

#include <memory>
#include <string>
#include <vector>

#include "avk/pbw.hpp"
#include "json.hpp"

namespace avk::cli {

struct PresetOptions {
  long window = 10;
  long closure_window = 4;
  /// Weight of L(mu) in fundamental-weight coordinates; 0 keeps the preset default.
  long mu = 0;
  std::string a, b;
  bool psi_left = false;
};

/// Runs one named preset and returns its report. The report carries "pass"; the
/// caller turns a failed comparison into kVerdictMismatch. Throws kPresetUnknown.
nlohmann::json run_preset(const std::string& name, std::shared_ptr<const PBW> pbw, const PresetOptions& opts);

std::vector<std::string> preset_names();

}  // namespace avk::cli
