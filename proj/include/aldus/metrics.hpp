#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aldus/sim.hpp"

namespace aldus {

struct ObjectStats {
    std::uint64_t return_count = 0;
    double mean_intensity = 0.0;
    friend bool operator==(const ObjectStats&, const ObjectStats&) = default;
};

struct DustStats {
    std::uint64_t count = 0;
    double mean_intensity = 0.0;
    // 10 equal-width bins over in-cloud depth, spanning [0, max observed depth].
    std::array<std::uint64_t, 10> depth_histogram{};
    double depth_max = 0.0;
    friend bool operator==(const DustStats&, const DustStats&) = default;
};

struct FrameMetrics {
    std::map<int, ObjectStats> per_object;  // every scene object, even with 0 returns
    DustStats dust;
    std::uint64_t dropped = 0;
    friend bool operator==(const FrameMetrics&, const FrameMetrics&) = default;
};

// Exact counts and means; dust depths are recomputed from the beam geometry.
// Throws IntegrityError when a return references an unknown object or cloud.
FrameMetrics compute_metrics(const Frame& frame, const ScenarioConfig& config);

// In-cloud distance traversed before reaching `range` along the beam.
double depth_in_cloud_at(const std::vector<MergedSegment>& segments, double range);

struct SweepRow {
    std::string param;
    double value = 0.0;
    std::uint64_t replicate = 0;
    int object_id = -1;  // -1 when the scene is empty
    std::uint64_t return_count = 0;
    double mean_intensity = 0.0;
    std::uint64_t dust_count = 0;
    double dust_mean_intensity = 0.0;
    std::uint64_t dropped = 0;
};

// One simulated frame per (value, replicate); replicate r runs with seed + r.
// param is "density" (sets every cloud's number density) or
// "cloud_front_distance" (places every cloud's front face at the given
// distance ahead of the sensor along +x).
std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& param,
                            std::span<const double> values, std::uint64_t replicates,
                            int threads = 0);

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& param,
                                 double value);

const std::string& sweep_csv_header();
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

}  // namespace aldus
