#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aldus/sim.hpp"

namespace aldus {

// ALDS frame-stream wire protocol, little-endian throughout.
//   session header: u32 magic 0x414C4453, u16 version = 1, u16 reserved = 0
//   per frame:      u64 frame_id, u32 point_count, then point_count records
//   record (16 B):  u16 channel, u16 flags (bit0 = dust), f32 azimuth_deg,
//                   f32 range_m, u8 intensity, 3 x u8 padding = 0
inline constexpr std::uint32_t kStreamMagic = 0x414C4453u;  // "ALDS"
inline constexpr std::uint16_t kStreamVersion = 1;
inline constexpr std::size_t kStreamRecordSize = 16;

std::vector<std::uint8_t> encode_session_header();
void append_frame(std::vector<std::uint8_t>& buffer, const Frame& frame);

struct StreamPoint {
    std::uint16_t channel = 0;
    std::uint16_t flags = 0;
    float azimuth_deg = 0.0f;
    float range_m = 0.0f;
    std::uint8_t intensity = 0;
    bool is_dust() const { return (flags & 1u) != 0; }
};

struct StreamFrame {
    std::uint64_t frame_id = 0;
    std::vector<StreamPoint> points;
};

// Reader counterpart used by consumers and tests; rejects bad magic, any
// version other than 1, and truncated frames.
std::vector<StreamFrame> decode_stream(std::span<const std::uint8_t> bytes);

// One-way co-simulation feed: listens on host:port, serves exactly one
// client, closes the connection after the last frame.
class StreamSink : public FrameSink {
public:
    StreamSink(const std::string& host, std::uint16_t port);
    ~StreamSink() override;
    StreamSink(const StreamSink&) = delete;
    StreamSink& operator=(const StreamSink&) = delete;

    // Blocks until a client connects, then sends the session header.
    void accept_client();

    void write(const Frame& frame) override;
    void finish() override;

private:
    void send_all(const std::uint8_t* data, std::size_t size, std::uint64_t frame_id);
    int listen_fd_ = -1;
    int client_fd_ = -1;
};

// Splits "host:port"; throws ConfigError on malformed input.
std::pair<std::string, std::uint16_t> parse_host_port(const std::string& address);

}  // namespace aldus
