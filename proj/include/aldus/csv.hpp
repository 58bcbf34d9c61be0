#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aldus/sim.hpp"

namespace aldus {

// Column layout:
//   frame_id,channel,azimuth_deg,elevation_deg,range_m,x,y,z,intensity,kind,source_id
// Floats carry 6 significant digits; kind is "target" or "dust".
const std::string& csv_header();

std::string csv_row(std::uint64_t frame_id, const LidarReturn& ret, const SensorModel& sensor);

void write_csv(std::ostream& os, const Frame& frame, const SensorModel& sensor,
               bool with_header = true);

std::string format_sig6(double v);

// One recorded detection, as consumed by the static injection path. raw_cols
// holds the original CSV columns so untouched points round-trip byte-exactly.
struct RecordedPoint {
    std::uint64_t frame_id = 0;
    int channel = 0;
    double azimuth_deg = 0.0;
    double range = 0.0;  // m, > 0
    int intensity = 0;
    std::vector<std::string> raw_cols;
};

// Strict reader: exact header, 11 columns per row, numeric fields validated.
// Throws ParseError with the offending line number.
std::vector<RecordedPoint> read_recorded_csv(std::istream& is);
std::vector<RecordedPoint> read_recorded_csv_file(const std::string& path);

class CsvSink : public FrameSink {
public:
    CsvSink(std::ostream& os, SensorModel sensor) : os_(os), sensor_(std::move(sensor)) {}
    void write(const Frame& frame) override;

private:
    std::ostream& os_;
    SensorModel sensor_;
    bool header_written_ = false;
};

}  // namespace aldus
