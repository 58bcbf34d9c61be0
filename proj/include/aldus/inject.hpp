#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "aldus/csv.hpp"
#include "aldus/sim.hpp"

namespace aldus {

struct InjectReport {
    std::uint64_t kept = 0;        // untouched: the beam crosses no cloud
    std::uint64_t attenuated = 0;  // intensity scaled by T^2
    std::uint64_t replaced = 0;    // dust scatter before the recorded range
    std::uint64_t dropped = 0;     // fell below the detection threshold
    std::uint64_t total() const { return kept + attenuated + replaced + dropped; }
};

struct InjectedPoint {
    enum class Outcome { Kept, Attenuated, Replaced };
    Outcome outcome = Outcome::Kept;
    std::uint64_t frame_id = 0;
    LidarReturn ret;
    std::vector<std::string> raw_cols;  // original row, when read from CSV
};

struct InjectOutput {
    std::vector<InjectedPoint> points;  // input order, dropped points removed
    InjectReport report;
};

// Static mode: applies the dust model to recorded points. Rays are
// reconstructed from (channel, azimuth index); the per-beam RNG keying matches
// the live engine, so injecting into a clean simulated frame reproduces the
// corresponding dusty simulation. Uses config.{sensor, pose, clouds, seed}.
InjectOutput inject_dust(std::span<const RecordedPoint> points, const ScenarioConfig& config,
                         int threads = 0);

// Reconstructs the azimuth grid index nearest to the recorded angle.
int azimuth_index_from_deg(const SensorModel& sensor, double azimuth_deg, double yaw_deg);

// Kept rows are re-emitted verbatim; attenuated rows only replace the
// intensity column; replaced rows are fully synthesized.
void write_injected_csv(std::ostream& os, const InjectOutput& output, const SensorModel& sensor);

}  // namespace aldus
