#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "deblur/image.hpp"

namespace deblur {

/// Parse failure categories for the binary image formats.
enum class IoErrorKind {
    bad_magic,
    malformed_header,
    unsupported_maxval,
    truncated_data,
    size_mismatch,
    non_finite_sample,
};

class IoError : public std::runtime_error {
public:
    IoError(IoErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    IoErrorKind kind() const noexcept { return kind_; }

private:
    IoErrorKind kind_;
};

/// Decode a binary PGM (P5, maxval <= 255). Samples become doubles with no
/// rescaling. Header whitespace and '#' comments are accepted.
Image read_pgm(const std::vector<std::uint8_t>& bytes);

/// Encode as binary PGM with the canonical header "P5\n<cols> <rows>\n255\n".
/// Each sample is clamped to [0,255] then rounded half-away-from-zero.
std::vector<std::uint8_t> write_pgm(const Image& img);

/// Lossless double-precision format: ASCII header "RAWF64 <rows> <cols>\n"
/// followed by rows*cols little-endian IEEE-754 doubles, row-major.
std::vector<std::uint8_t> write_raw(const Image& img);
Image read_raw(const std::vector<std::uint8_t>& bytes);

// File helpers. Throw std::runtime_error on filesystem failures and IoError
// on format violations.
Image load_pgm(const std::string& path);
void save_pgm(const std::string& path, const Image& img);
Image load_raw(const std::string& path);
void save_raw(const std::string& path, const Image& img);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace deblur
