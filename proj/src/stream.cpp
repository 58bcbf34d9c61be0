#include "aldus/stream.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cstring>
#include <stdexcept>

#include "aldus/error.hpp"

namespace aldus {

namespace {

void put_u16(std::vector<std::uint8_t>& buf, std::uint16_t v) {
    buf.push_back(std::uint8_t(v & 0xff));
    buf.push_back(std::uint8_t(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(std::uint8_t(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(std::uint8_t(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& buf, float v) {
    put_u32(buf, std::bit_cast<std::uint32_t>(v));
}

class Cursor {
public:
    explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
    bool done() const { return pos_ == bytes_.size(); }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    std::uint16_t u16() { return std::uint16_t(take(2)); }
    std::uint32_t u32() { return std::uint32_t(take(4)); }
    std::uint64_t u64() { return take(8); }
    std::uint8_t u8() { return std::uint8_t(take(1)); }
    float f32() { return std::bit_cast<float>(u32()); }

private:
    std::uint64_t take(int n) {
        if (remaining() < std::size_t(n)) throw std::runtime_error("truncated ALDS stream");
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= std::uint64_t(bytes_[pos_ + i]) << (8 * i);
        pos_ += n;
        return v;
    }
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_session_header() {
    std::vector<std::uint8_t> buf;
    buf.reserve(8);
    put_u32(buf, kStreamMagic);
    put_u16(buf, kStreamVersion);
    put_u16(buf, 0);  // reserved
    return buf;
}

void append_frame(std::vector<std::uint8_t>& buf, const Frame& frame) {
    buf.reserve(buf.size() + 12 + frame.returns.size() * kStreamRecordSize);
    put_u64(buf, frame.frame_id);
    put_u32(buf, std::uint32_t(frame.returns.size()));
    for (const LidarReturn& ret : frame.returns) {
        put_u16(buf, std::uint16_t(ret.channel));
        put_u16(buf, ret.kind == ReturnKind::Dust ? 1 : 0);
        put_f32(buf, float(ret.azimuth_deg));
        put_f32(buf, float(ret.range));
        buf.push_back(std::uint8_t(ret.intensity));
        buf.push_back(0);
        buf.push_back(0);
        buf.push_back(0);
    }
}

std::vector<StreamFrame> decode_stream(std::span<const std::uint8_t> bytes) {
    Cursor cur(bytes);
    if (cur.u32() != kStreamMagic) throw std::runtime_error("bad ALDS magic");
    const std::uint16_t version = cur.u16();
    if (version != kStreamVersion) {
        throw std::runtime_error("unsupported ALDS stream version " + std::to_string(version));
    }
    cur.u16();  // reserved
    std::vector<StreamFrame> frames;
    while (!cur.done()) {
        StreamFrame frame;
        frame.frame_id = cur.u64();
        const std::uint32_t count = cur.u32();
        frame.points.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            StreamPoint p;
            p.channel = cur.u16();
            p.flags = cur.u16();
            p.azimuth_deg = cur.f32();
            p.range_m = cur.f32();
            p.intensity = cur.u8();
            cur.u8();
            cur.u8();
            cur.u8();
            frame.points.push_back(p);
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

std::pair<std::string, std::uint16_t> parse_host_port(const std::string& address) {
    const std::size_t colon = address.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
        throw ConfigError("stream address must be host:port, got '" + address + "'");
    }
    const std::string host = address.substr(0, colon);
    const std::string port_str = address.substr(colon + 1);
    char* end = nullptr;
    const long port = std::strtol(port_str.c_str(), &end, 10);
    if (*end != '\0' || port < 1 || port > 65535) {
        throw ConfigError("invalid port '" + port_str + "' in stream address");
    }
    return {host, std::uint16_t(port)};
}

StreamSink::StreamSink(const std::string& host, std::uint16_t port) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw SinkError("socket: " + std::string(std::strerror(errno)), 0);
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw SinkError("cannot resolve bind address '" + host + "'", 0);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
        ::listen(listen_fd_, 1) != 0) {
        const std::string err = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw SinkError("bind/listen on " + host + ":" + std::to_string(port) + ": " + err, 0);
    }
}

StreamSink::~StreamSink() {
    if (client_fd_ >= 0) ::close(client_fd_);
    if (listen_fd_ >= 0) ::close(listen_fd_);
}

void StreamSink::accept_client() {
    client_fd_ = ::accept(listen_fd_, nullptr, nullptr);
    if (client_fd_ < 0) throw SinkError("accept: " + std::string(std::strerror(errno)), 0);
    const auto header = encode_session_header();
    send_all(header.data(), header.size(), 0);
}

void StreamSink::send_all(const std::uint8_t* data, std::size_t size, std::uint64_t frame_id) {
    std::size_t sent = 0;
    while (sent < size) {
        const ssize_t n = ::send(client_fd_, data + sent, size - sent, MSG_NOSIGNAL);
        if (n <= 0) {
            throw SinkError("client disconnected mid-stream", frame_id);
        }
        sent += std::size_t(n);
    }
}

void StreamSink::write(const Frame& frame) {
    if (client_fd_ < 0) accept_client();
    std::vector<std::uint8_t> buf;
    append_frame(buf, frame);
    send_all(buf.data(), buf.size(), frame.frame_id);
}

void StreamSink::finish() {
    if (client_fd_ >= 0) {
        ::close(client_fd_);
        client_fd_ = -1;
    }
}

}  // namespace aldus
