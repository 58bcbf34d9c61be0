#include "aldus/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "aldus/error.hpp"

namespace aldus {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cols.push_back(line.substr(start));
            return cols;
        }
        cols.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <typename T>
T parse_number(const std::string& text, const char* what, std::size_t line) {
    T value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ParseError(std::string("invalid ") + what + " value '" + text + "'", line);
    }
    return value;
}

}  // namespace

const std::string& csv_header() {
    static const std::string header =
        "frame_id,channel,azimuth_deg,elevation_deg,range_m,x,y,z,intensity,kind,source_id";
    return header;
}

std::string format_sig6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string csv_row(std::uint64_t frame_id, const LidarReturn& ret, const SensorModel& sensor) {
    std::string row;
    row.reserve(96);
    row += std::to_string(frame_id);
    row += ',';
    row += std::to_string(ret.channel);
    row += ',';
    row += format_sig6(ret.azimuth_deg);
    row += ',';
    row += format_sig6(sensor.vertical_angles_deg[ret.channel]);
    row += ',';
    row += format_sig6(ret.range);
    row += ',';
    row += format_sig6(ret.point.x);
    row += ',';
    row += format_sig6(ret.point.y);
    row += ',';
    row += format_sig6(ret.point.z);
    row += ',';
    row += std::to_string(ret.intensity);
    row += ',';
    row += ret.kind == ReturnKind::Dust ? "dust" : "target";
    row += ',';
    row += std::to_string(ret.source_id);
    return row;
}

void write_csv(std::ostream& os, const Frame& frame, const SensorModel& sensor, bool with_header) {
    if (with_header) os << csv_header() << '\n';
    for (const LidarReturn& ret : frame.returns) {
        os << csv_row(frame.frame_id, ret, sensor) << '\n';
    }
}

std::vector<RecordedPoint> read_recorded_csv(std::istream& is) {
    std::vector<RecordedPoint> points;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(is, line)) throw ParseError("empty input, expected CSV header", 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header()) {
        throw ParseError("unexpected header, expected '" + csv_header() + "'", line_no);
    }

    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols = split_csv(line);
        if (cols.size() != 11) {
            throw ParseError("expected 11 columns, found " + std::to_string(cols.size()), line_no);
        }
        RecordedPoint p;
        p.frame_id = parse_number<std::uint64_t>(cols[0], "frame_id", line_no);
        p.channel = parse_number<int>(cols[1], "channel", line_no);
        p.azimuth_deg = parse_number<double>(cols[2], "azimuth_deg", line_no);
        p.range = parse_number<double>(cols[4], "range_m", line_no);
        p.intensity = parse_number<int>(cols[8], "intensity", line_no);
        if (p.range <= 0.0) throw ParseError("range_m must be > 0", line_no);
        if (p.intensity < 0 || p.intensity > 255) {
            throw ParseError("intensity must be in 0..255", line_no);
        }
        p.raw_cols = std::move(cols);
        points.push_back(std::move(p));
    }
    return points;
}

std::vector<RecordedPoint> read_recorded_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path, 0);
    return read_recorded_csv(in);
}

void CsvSink::write(const Frame& frame) {
    write_csv(os_, frame, sensor_, !header_written_);
    header_written_ = true;
    if (!os_) throw SinkError("csv write failed", frame.frame_id);
}

}  // namespace aldus
