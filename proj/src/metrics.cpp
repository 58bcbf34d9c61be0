#include "aldus/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "aldus/csv.hpp"
#include "aldus/error.hpp"

namespace aldus {

double depth_in_cloud_at(const std::vector<MergedSegment>& segments, double range) {
    double depth = 0.0;
    for (const MergedSegment& s : segments) {
        if (range >= s.t_out) {
            depth += s.t_out - s.t_in;
        } else if (range > s.t_in) {
            depth += range - s.t_in;
            break;
        } else {
            break;
        }
    }
    return depth;
}

FrameMetrics compute_metrics(const Frame& frame, const ScenarioConfig& config) {
    FrameMetrics m;
    for (const SceneObject& obj : config.scene) m.per_object[obj.id] = {};
    m.dropped = frame.dropped_count;

    std::vector<double> depths;
    std::map<int, double> intensity_sums;
    double dust_intensity_sum = 0.0;

    for (const LidarReturn& ret : frame.returns) {
        if (ret.kind == ReturnKind::Target) {
            const auto it = m.per_object.find(ret.source_id);
            if (it == m.per_object.end()) {
                throw IntegrityError("return references unknown object id " +
                                     std::to_string(ret.source_id));
            }
            it->second.return_count += 1;
            intensity_sums[ret.source_id] += ret.intensity;
        } else {
            bool known = false;
            for (const DustCloud& c : config.clouds) known |= (c.id == ret.source_id);
            if (!known) {
                throw IntegrityError("return references unknown cloud id " +
                                     std::to_string(ret.source_id));
            }
            m.dust.count += 1;
            dust_intensity_sum += ret.intensity;
            const BeamContext ctx = make_beam_context(config, ret.channel, ret.azimuth_index);
            depths.push_back(depth_in_cloud_at(ctx.segments, ret.range));
        }
    }

    for (auto& [id, stats] : m.per_object) {
        if (stats.return_count > 0) stats.mean_intensity = intensity_sums[id] / stats.return_count;
    }
    if (m.dust.count > 0) {
        m.dust.mean_intensity = dust_intensity_sum / double(m.dust.count);
        m.dust.depth_max = *std::max_element(depths.begin(), depths.end());
        const double width = m.dust.depth_max / double(m.dust.depth_histogram.size());
        for (double d : depths) {
            std::size_t bin = 0;
            if (width > 0.0) {
                bin = std::min(m.dust.depth_histogram.size() - 1, std::size_t(d / width));
            }
            m.dust.depth_histogram[bin] += 1;
        }
    }
    return m;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, const std::string& param,
                                 double value) {
    ScenarioConfig cfg = base;
    if (param == "density") {
        if (value < 0.0) throw ConfigError("density sweep value must be >= 0");
        for (DustCloud& cloud : cfg.clouds) cloud.number_density = value;
    } else if (param == "cloud_front_distance") {
        if (value <= 0.0) throw ConfigError("cloud_front_distance sweep value must be > 0");
        for (DustCloud& cloud : cfg.clouds) {
            if (Box* box = std::get_if<Box>(&cloud.shape)) {
                box->center.x = cfg.pose.origin.x + value + box->half_extents.x;
            } else {
                Ellipsoid& e = std::get<Ellipsoid>(cloud.shape);
                e.center.x = cfg.pose.origin.x + value + e.semi_axes.x;
            }
        }
    } else {
        throw ConfigError("parameter '" + param +
                          "' is not sweepable; valid parameters: density, cloud_front_distance");
    }
    return cfg;
}

std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& param,
                            std::span<const double> values, std::uint64_t replicates,
                            int threads) {
    if (values.empty()) throw ConfigError("sweep values must be non-empty");
    if (replicates < 1) throw ConfigError("sweep replicates must be >= 1");
    if (base.clouds.empty()) throw ConfigError("sweep requires at least one cloud in the config");

    std::vector<SweepRow> rows;
    for (const double value : values) {
        ScenarioConfig cfg = apply_sweep_value(base, param, value);
        for (std::uint64_t rep = 0; rep < replicates; ++rep) {
            cfg.seed = base.seed + rep;
            const Frame frame = simulate_frame(cfg, 0, threads);
            const FrameMetrics m = compute_metrics(frame, cfg);
            const auto emit = [&](int object_id, const ObjectStats& stats) {
                SweepRow row;
                row.param = param;
                row.value = value;
                row.replicate = rep;
                row.object_id = object_id;
                row.return_count = stats.return_count;
                row.mean_intensity = stats.mean_intensity;
                row.dust_count = m.dust.count;
                row.dust_mean_intensity = m.dust.mean_intensity;
                row.dropped = m.dropped;
                rows.push_back(std::move(row));
            };
            if (m.per_object.empty()) {
                emit(-1, ObjectStats{});
            } else {
                for (const auto& [id, stats] : m.per_object) emit(id, stats);
            }
        }
    }
    return rows;
}

const std::string& sweep_csv_header() {
    static const std::string header =
        "param,value,replicate,object_id,return_count,mean_intensity,dust_count,"
        "dust_mean_intensity,dropped";
    return header;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << sweep_csv_header() << '\n';
    for (const SweepRow& r : rows) {
        os << r.param << ',' << format_sig6(r.value) << ',' << r.replicate << ',' << r.object_id
           << ',' << r.return_count << ',' << format_sig6(r.mean_intensity) << ',' << r.dust_count
           << ',' << format_sig6(r.dust_mean_intensity) << ',' << r.dropped << '\n';
    }
}

}  // namespace aldus
