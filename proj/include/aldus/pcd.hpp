#pragma once

#include <iosfwd>
#include <string>

#include "aldus/sim.hpp"

namespace aldus {

// PCD v0.7 ASCII, FIELDS x y z intensity ring.
void write_pcd(std::ostream& os, const Frame& frame);

// One file per frame. A single-frame run writes exactly `path`; multi-frame
// runs insert _NNNNNN before the extension.
class PcdSink : public FrameSink {
public:
    PcdSink(std::string path, std::uint64_t total_frames)
        : path_(std::move(path)), total_frames_(total_frames) {}
    void write(const Frame& frame) override;

private:
    std::string frame_path(std::uint64_t frame_id) const;
    std::string path_;
    std::uint64_t total_frames_;
};

}  // namespace aldus
