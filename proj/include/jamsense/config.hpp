// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "jamsense/experiments.hpp"

namespace jamsense {

/// Schema violation in an experiment document.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Parses a JSON experiment document.  Unknown keys are rejected, dB fields
/// are converted to linear powers, and the result is validated.
ExperimentSpec parse_config(const std::string& text);
ExperimentSpec load_config(const std::string& path);

}  // namespace jamsense
