#include "aldus/inject.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <thread>

#include "aldus/error.hpp"

namespace aldus {

namespace {

const DustCloud* cloud_by_id(std::span<const DustCloud> clouds, int id) {
    for (const DustCloud& c : clouds) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

struct PointResult {
    bool dropped = false;
    InjectedPoint out;
};

}  // namespace

int azimuth_index_from_deg(const SensorModel& sensor, double azimuth_deg, double yaw_deg) {
    const double step = sensor.azimuth_step_deg();
    double rel = std::fmod(azimuth_deg - yaw_deg, 360.0);
    if (rel < 0.0) rel += 360.0;
    const long idx = std::lround(rel / step) % sensor.azimuth_steps;
    return int(idx);
}

InjectOutput inject_dust(std::span<const RecordedPoint> points, const ScenarioConfig& config,
                         int threads) {
    const SensorModel& sensor = config.sensor;

    std::set<int> bad_channels;
    for (const RecordedPoint& p : points) {
        if (p.channel < 0 || p.channel >= sensor.channels()) bad_channels.insert(p.channel);
    }
    if (!bad_channels.empty()) {
        std::string list;
        for (int c : bad_channels) {
            if (!list.empty()) list += ", ";
            list += std::to_string(c);
        }
        throw ConfigError("input contains channels outside the sensor model: " + list +
                          " (sensor has " + std::to_string(sensor.channels()) + " channels)");
    }

    std::vector<PointResult> results(points.size());

    const auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const RecordedPoint& rec = points[i];
            const int az_index = azimuth_index_from_deg(sensor, rec.azimuth_deg, config.pose.yaw_deg);
            const Ray ray{config.pose.origin,
                          beam_direction(sensor, rec.channel, az_index, config.pose.yaw_deg),
                          rec.channel, az_index};
            const auto merged =
                merge_segments(cloud_segments(ray, config.clouds, rec.range), config.clouds);

            const BeamRng rng(config.seed, rec.frame_id, rec.channel, az_index);
            const double u = rng.uniform(kDrawScatter);
            const double noise = rng.gaussian(kDrawRangeNoise);

            PointResult& res = results[i];
            res.out.frame_id = rec.frame_id;
            res.out.raw_cols = rec.raw_cols;

            const auto event = sample_scatter(merged, u);
            if (event && event->t_scatter < rec.range) {
                const DustCloud* cloud = cloud_by_id(config.clouds, event->cloud_id);
                const double intensity = dust_return_intensity(*event, *cloud, sensor.calib());
                const auto det = detect(intensity, event->t_scatter, sensor, noise);
                if (!det) {
                    res.dropped = true;
                    continue;
                }
                res.out.outcome = InjectedPoint::Outcome::Replaced;
                LidarReturn& ret = res.out.ret;
                ret.channel = rec.channel;
                ret.azimuth_index = az_index;
                ret.azimuth_deg =
                    normalize_deg(double(az_index) * sensor.azimuth_step_deg() + config.pose.yaw_deg);
                ret.range = det->range;
                ret.intensity = det->intensity;
                ret.kind = ReturnKind::Dust;
                ret.source_id = event->cloud_id;
                ret.point = ray.origin + det->range * ray.direction;
                continue;
            }

            const double tau = total_optical_depth(merged);
            LidarReturn& ret = res.out.ret;
            ret.channel = rec.channel;
            ret.azimuth_index = az_index;
            ret.azimuth_deg = rec.azimuth_deg;
            ret.range = rec.range;
            ret.kind = ReturnKind::Target;
            ret.source_id = -1;  // recorded data carries no object identity
            ret.point = ray.origin + rec.range * ray.direction;
            if (tau == 0.0) {
                res.out.outcome = InjectedPoint::Outcome::Kept;
                ret.intensity = rec.intensity;
                continue;
            }
            // Attenuate the recorded intensity by the two-way transmittance and
            // re-threshold. The recorded range is kept as-is: it was already
            // noised when recorded.
            const double tmit = std::exp(-tau);
            const double attenuated = double(rec.intensity) * tmit * tmit;
            if (attenuated < sensor.detection_threshold) {
                res.dropped = true;
                continue;
            }
            res.out.outcome = InjectedPoint::Outcome::Attenuated;
            ret.intensity = int(std::lround(std::min(attenuated, 255.0)));
        }
    };

    const int n = std::min<int>(resolve_threads(threads), std::max<int>(1, int(points.size())));
    if (n <= 1 || points.size() < 2) {
        worker(0, points.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (points.size() + n - 1) / n;
        for (int t = 0; t < n; ++t) {
            const std::size_t lo = std::size_t(t) * chunk;
            const std::size_t hi = std::min(points.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    InjectOutput output;
    output.points.reserve(points.size());
    for (PointResult& res : results) {
        if (res.dropped) {
            ++output.report.dropped;
            continue;
        }
        switch (res.out.outcome) {
            case InjectedPoint::Outcome::Kept: ++output.report.kept; break;
            case InjectedPoint::Outcome::Attenuated: ++output.report.attenuated; break;
            case InjectedPoint::Outcome::Replaced: ++output.report.replaced; break;
        }
        output.points.push_back(std::move(res.out));
    }
    return output;
}

void write_injected_csv(std::ostream& os, const InjectOutput& output, const SensorModel& sensor) {
    os << csv_header() << '\n';
    for (const InjectedPoint& p : output.points) {
        if (!p.raw_cols.empty() && p.outcome == InjectedPoint::Outcome::Kept) {
            for (std::size_t i = 0; i < p.raw_cols.size(); ++i) {
                if (i) os << ',';
                os << p.raw_cols[i];
            }
            os << '\n';
        } else if (!p.raw_cols.empty() && p.outcome == InjectedPoint::Outcome::Attenuated) {
            // Only the intensity column changes; everything else stays verbatim.
            for (std::size_t i = 0; i < p.raw_cols.size(); ++i) {
                if (i) os << ',';
                if (i == 8) {
                    os << p.ret.intensity;
                } else {
                    os << p.raw_cols[i];
                }
            }
            os << '\n';
        } else {
            os << csv_row(p.frame_id, p.ret, sensor) << '\n';
        }
    }
}

}  // namespace aldus
