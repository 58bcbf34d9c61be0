#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aldus/config.hpp"
#include "aldus/medium.hpp"
#include "aldus/rng.hpp"
#include "aldus/scene.hpp"
#include "aldus/sensor.hpp"

namespace aldus {

enum class ReturnKind { Target, Dust };

struct LidarReturn {
    int channel = 0;
    int azimuth_index = 0;
    double azimuth_deg = 0.0;  // [0, 360)
    double range = 0.0;        // m, reported (includes range noise)
    int intensity = 0;         // 0..255
    ReturnKind kind = ReturnKind::Target;
    int source_id = -1;  // object id for targets, cloud id for dust
    Vec3 point;          // origin + range * direction
    friend bool operator==(const LidarReturn&, const LidarReturn&) = default;
};

struct Frame {
    std::uint64_t frame_id = 0;
    std::string sensor_name;
    std::uint64_t seed = 0;
    std::vector<LidarReturn> returns;       // channel-major beam order
    std::uint64_t dropped_count = 0;        // beams with no detection
    friend bool operator==(const Frame&, const Frame&) = default;
};

// Scene/medium state of one beam, shared by the engine, the metrics
// recomputation, and the static injection path.
struct BeamContext {
    Ray ray;
    std::optional<Hit> hit;
    std::vector<MergedSegment> segments;  // clipped to the hit range (or max range)
};

BeamContext make_beam_context(const ScenarioConfig& config, int channel, int azimuth_index);

// One beam through the full pipeline: nearest hit, cloud segments, scatter
// draw, first-return arbitration, detection. Consumes exactly one scatter
// draw and one range-noise draw.
std::optional<LidarReturn> simulate_beam(const Ray& ray, const ScenarioConfig& config,
                                         const BeamRng& rng);

// Bit-identical output for identical (config, frame_id), any worker count.
Frame simulate_frame(const ScenarioConfig& config, std::uint64_t frame_id, int threads = 0);

class FrameSink {
public:
    virtual ~FrameSink() = default;
    virtual void write(const Frame& frame) = 0;
    virtual void finish() {}
};

// Discards frames; used by the benchmark path.
class NullSink : public FrameSink {
public:
    void write(const Frame&) override {}
};

struct RunSummary {
    std::uint64_t frames = 0;
    std::uint64_t beams = 0;
    double seconds = 0.0;
    double frames_per_sec() const { return seconds > 0.0 ? double(frames) / seconds : 0.0; }
    double rays_per_sec() const { return seconds > 0.0 ? double(beams) / seconds : 0.0; }
};

// Simulates config.frames frames and streams each to the sink in frame order.
RunSummary run_scenario(const ScenarioConfig& config, FrameSink& sink, int threads = 0);

int resolve_threads(int requested);  // 0 = hardware concurrency

}  // namespace aldus
