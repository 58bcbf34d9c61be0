#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aldus/medium.hpp"
#include "aldus/scene.hpp"
#include "aldus/sensor.hpp"

namespace aldus {

struct OutputSpec {
    std::string format = "csv";  // csv | pcd | stream
    std::string path = "-";      // file path, "-" for stdout, host:port for stream
    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

// The unit of reproducibility: the same config and seed always produce the
// same frames, regardless of worker count.
struct ScenarioConfig {
    std::string sensor_preset = "vlp16";
    SensorModel sensor;  // preset with overrides applied
    Pose pose;
    std::vector<SceneObject> scene;
    std::vector<DustCloud> clouds;
    std::uint64_t seed = 0;
    std::uint64_t frames = 1;
    OutputSpec output;
    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Strict parser: unknown keys are rejected, every semantic error names the
// offending field. Accepts // and /* */ comments in the file.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

// Inverse of parse_config: parse_config(render_config(c)) == c.
std::string render_config(const ScenarioConfig& config);

}  // namespace aldus
