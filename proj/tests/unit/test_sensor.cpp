#include <doctest.h>

#include <cmath>

#include "aldus/error.hpp"
#include "aldus/sensor.hpp"

using namespace aldus;

TEST_CASE("vlp16 preset") {
    const SensorModel m = sensor_preset("vlp16");
    CHECK(m.channels() == 16);
    CHECK(m.vertical_angles_deg.front() == -15.0);
    CHECK(m.vertical_angles_deg.back() == 15.0);
    CHECK(m.vertical_angles_deg[1] - m.vertical_angles_deg[0] == 2.0);
    CHECK(m.azimuth_steps == 1800);
    CHECK(m.azimuth_step_deg() == doctest::Approx(0.2));
    CHECK(m.max_range == 100.0);
    CHECK(m.rotation_rate_hz == 10.0);
}

TEST_CASE("os1-64 preset") {
    const SensorModel m = sensor_preset("os1-64");
    CHECK(m.channels() == 64);
    CHECK(m.vertical_angles_deg.front() == doctest::Approx(-22.5));
    CHECK(m.vertical_angles_deg.back() == doctest::Approx(22.5));
    CHECK(m.vertical_angles_deg.back() - m.vertical_angles_deg.front() == doctest::Approx(45.0));
    CHECK(m.azimuth_steps == 1024);
    CHECK(m.max_range == 120.0);
}

TEST_CASE("unknown preset names the valid ones") {
    try {
        sensor_preset("foo");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("vlp16") != std::string::npos);
        CHECK(msg.find("os1-64") != std::string::npos);
    }
}

TEST_CASE("scan_rays count and ordering") {
    const SensorModel m = sensor_preset("vlp16");
    const auto rays = scan_rays(m, Pose{{0, 0, 0}, 0.0});
    REQUIRE(rays.size() == 28800);  // 16 x 1800

    // First ray: channel 0, azimuth 0 -> elevation -15 deg, azimuth 0 deg.
    CHECK(rays[0].channel == 0);
    CHECK(rays[0].azimuth_index == 0);
    CHECK(rays[0].direction.x == doctest::Approx(std::cos(deg2rad(-15.0))).epsilon(1e-12));
    CHECK(rays[0].direction.y == doctest::Approx(0.0));
    CHECK(rays[0].direction.z == doctest::Approx(std::sin(deg2rad(-15.0))).epsilon(1e-12));

    // Channel-major: the second ray advances azimuth, not channel.
    CHECK(rays[1].channel == 0);
    CHECK(rays[1].azimuth_index == 1);

    // Symmetric vertical angles cancel in z.
    double z_sum = 0.0;
    for (const Ray& r : rays) z_sum += r.direction.z;
    CHECK(std::abs(z_sum) < 1e-9 * double(rays.size()));

    // Unit directions.
    for (int i = 0; i < 100; ++i) {
        CHECK(std::abs(rays[i * 288].direction.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("scan_rays is deterministic") {
    const SensorModel m = sensor_preset("os1-64");
    const Pose pose{{1.0, -2.0, 1.5}, 33.0};
    const auto a = scan_rays(m, pose);
    const auto b = scan_rays(m, pose);
    REQUIRE(a.size() == 65536);  // 64 x 1024
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i += 997) {
        CHECK(a[i].direction == b[i].direction);
    }
}

TEST_CASE("target_return_intensity examples") {
    const IntensityCalib calib{25600.0, 0.5, 255.0};

    // Perfect reflector at 10 m saturates after quantization.
    const double sat = target_return_intensity(1.0, 10.0, 1.0, calib);
    CHECK(sat == doctest::Approx(256.0).epsilon(1e-12));

    const double dusty = target_return_intensity(1.0, 10.0, 0.5335, calib);
    CHECK(dusty == doctest::Approx(256.0 * 0.5335 * 0.5335).epsilon(1e-12));
    CHECK(dusty == doctest::Approx(72.9).epsilon(1e-2));

    // A perfectly black target is invisible.
    CHECK(target_return_intensity(0.0, 10.0, 1.0, calib) == 0.0);
}

TEST_CASE("target_return_intensity monotonicity") {
    const IntensityCalib calib{25600.0, 0.5, 255.0};
    CHECK(target_return_intensity(0.5, 20.0, 1.0, calib) <
          target_return_intensity(0.5, 10.0, 1.0, calib));
    CHECK(target_return_intensity(0.5, 10.0, 0.5, calib) <
          target_return_intensity(0.5, 10.0, 0.9, calib));
    CHECK(target_return_intensity(0.3, 10.0, 1.0, calib) <
          target_return_intensity(0.6, 10.0, 1.0, calib));
}

TEST_CASE("detect thresholds and clamps") {
    SensorModel m = sensor_preset("vlp16");
    m.range_noise_sigma = 0.0;

    // Just below threshold: missed detection.
    CHECK_FALSE(detect(m.detection_threshold - 1e-9, 20.0, m, 0.0));
    CHECK(detect(m.detection_threshold, 20.0, m, 0.0).has_value());

    // Saturation.
    const auto sat = detect(400.0, 20.0, m, 0.0);
    REQUIRE(sat.has_value());
    CHECK(sat->intensity == 255);

    // Range gates.
    CHECK_FALSE(detect(10.0, m.min_range - 0.01, m, 0.0));
    CHECK_FALSE(detect(10.0, m.max_range + 0.01, m, 0.0));

    // Noise-free mode reports the exact range.
    const auto d = detect(10.0, 16.0, m, 0.0);
    REQUIRE(d.has_value());
    CHECK(d->range == 16.0);
}

TEST_CASE("detect applies range noise and the lower clamp") {
    SensorModel m = sensor_preset("vlp16");
    m.range_noise_sigma = 0.5;
    const auto d = detect(10.0, 5.0, m, 1.0);
    REQUIRE(d.has_value());
    CHECK(d->range == doctest::Approx(5.5));
    const auto clamped = detect(10.0, 1.0, m, -10.0);  // would report below min_range
    REQUIRE(clamped.has_value());
    CHECK(clamped->range == m.min_range);
}

TEST_CASE("detect is monotone in intensity") {
    SensorModel m = sensor_preset("vlp16");
    for (double base = 0.1; base < 300.0; base *= 1.7) {
        if (detect(base, 20.0, m, 0.0)) {
            CHECK(detect(base * 2.0, 20.0, m, 0.0).has_value());
        }
    }
}

TEST_CASE("default calibration sees 0.5-reflectivity targets at 16 and 40 m") {
    const SensorModel m = sensor_preset("vlp16");
    const double near = target_return_intensity(0.5, 16.0, 1.0, m.calib());
    const double far = target_return_intensity(0.5, 40.0, 1.0, m.calib());
    CHECK(detect(near, 16.0, m, 0.0).has_value());
    CHECK(detect(far, 40.0, m, 0.0).has_value());
    // Margin of at least 2x at the far target.
    CHECK(far >= 2.0 * m.detection_threshold);
}
