#include "aldus/pcd.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "aldus/error.hpp"

namespace aldus {

void write_pcd(std::ostream& os, const Frame& frame) {
    const std::size_t n = frame.returns.size();
    os << "# .PCD v0.7 - Point Cloud Data file format\n"
          "VERSION 0.7\n"
          "FIELDS x y z intensity ring\n"
          "SIZE 4 4 4 4 2\n"
          "TYPE F F F F U\n"
          "COUNT 1 1 1 1 1\n"
          "WIDTH "
       << n
       << "\nHEIGHT 1\n"
          "VIEWPOINT 0 0 0 1 0 0 0\n"
          "POINTS "
       << n << "\nDATA ascii\n";
    char buf[128];
    for (const LidarReturn& ret : frame.returns) {
        std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f %d %d\n", ret.point.x, ret.point.y,
                      ret.point.z, ret.intensity, ret.channel);
        os << buf;
    }
}

std::string PcdSink::frame_path(std::uint64_t frame_id) const {
    if (total_frames_ <= 1) return path_;
    const std::size_t dot = path_.rfind('.');
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "_%06llu", static_cast<unsigned long long>(frame_id));
    if (dot == std::string::npos || dot == 0) return path_ + suffix;
    return path_.substr(0, dot) + suffix + path_.substr(dot);
}

void PcdSink::write(const Frame& frame) {
    const std::string path = frame_path(frame.frame_id);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SinkError("cannot open " + path, frame.frame_id);
    write_pcd(out, frame);
    if (!out) throw SinkError("pcd write failed: " + path, frame.frame_id);
}

}  // namespace aldus
