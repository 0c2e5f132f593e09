#pragma once

#include <stdexcept>
#include <string>

#include "ifslab/cloud.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedConfig {
    IfsInstance instance;
    PointCloud seed;  // "origin" resolves to the single origin point
};

/// Parse an IFS description (JSON). Unknown keys are rejected.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(const std::string& text);

}  // namespace ifslab
