#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aldus {

// Invalid scenario configuration: bad schema, out-of-range value, unknown preset.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Output sink failed while delivering the given frame.
class SinkError : public std::runtime_error {
public:
    SinkError(const std::string& msg, std::uint64_t frame_id)
        : std::runtime_error("frame " + std::to_string(frame_id) + ": " + msg), frame_id_(frame_id) {}
    std::uint64_t frame_id() const { return frame_id_; }

private:
    std::uint64_t frame_id_;
};

// A frame references scene or cloud entities that do not exist.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace aldus
