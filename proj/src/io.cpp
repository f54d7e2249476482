#include "deblur/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace deblur {

namespace {

// Cursor over a byte buffer for PGM header parsing.
struct ByteReader {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    bool eof() const { return pos >= buf.size(); }
    int peek() const { return eof() ? -1 : buf[pos]; }
    int get() { return eof() ? -1 : buf[pos++]; }

    // Whitespace and '#'-to-end-of-line comments separate header tokens.
    void skip_separators() {
        while (!eof()) {
            int c = peek();
            if (std::isspace(c)) {
                ++pos;
            } else if (c == '#') {
                while (!eof() && get() != '\n') {
                }
            } else {
                break;
            }
        }
    }

    long read_uint(const char* field) {
        skip_separators();
        if (eof() || !std::isdigit(peek()))
            throw IoError(IoErrorKind::malformed_header,
                          std::string("PGM header: expected ") + field);
        long value = 0;
        while (!eof() && std::isdigit(peek())) {
            value = value * 10 + (get() - '0');
            if (value > 1L << 30)
                throw IoError(IoErrorKind::malformed_header,
                              std::string("PGM header: ") + field + " out of range");
        }
        return value;
    }
};

void append_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t load_u64_le(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

}  // namespace

Image read_pgm(const std::vector<std::uint8_t>& bytes) {
    ByteReader r{bytes};
    if (r.get() != 'P' || r.get() != '5')
        throw IoError(IoErrorKind::bad_magic, "PGM: missing P5 magic");

    long cols = r.read_uint("width");
    long rows = r.read_uint("height");
    long maxval = r.read_uint("maxval");
    if (cols <= 0 || rows <= 0 || maxval <= 0)
        throw IoError(IoErrorKind::malformed_header, "PGM header: nonpositive field");
    if (maxval > 255)
        throw IoError(IoErrorKind::unsupported_maxval,
                      "PGM: maxval " + std::to_string(maxval) + " unsupported (max 255)");

    // Exactly one whitespace byte separates the header from the raster.
    if (r.eof() || !std::isspace(r.peek()))
        throw IoError(IoErrorKind::malformed_header, "PGM header: missing separator");
    r.get();

    std::size_t need = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (bytes.size() - r.pos < need)
        throw IoError(IoErrorKind::truncated_data,
                      "PGM: raster truncated (" + std::to_string(bytes.size() - r.pos) +
                          " of " + std::to_string(need) + " bytes)");

    std::vector<double> samples(need);
    for (std::size_t i = 0; i < need; ++i)
        samples[i] = static_cast<double>(bytes[r.pos + i]);
    return Image(static_cast<int>(rows), static_cast<int>(cols), std::move(samples));
}

std::vector<std::uint8_t> write_pgm(const Image& img) {
    char header[64];
    int n = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", img.cols(), img.rows());

    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(n) + img.size());
    out.insert(out.end(), header, header + n);

    for (double v : img.samples()) {
        double clamped = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
        out.push_back(static_cast<std::uint8_t>(std::round(clamped)));
    }
    return out;
}

std::vector<std::uint8_t> write_raw(const Image& img) {
    char header[64];
    int n = std::snprintf(header, sizeof(header), "RAWF64 %d %d\n", img.rows(), img.cols());

    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(n) + 8 * img.size());
    out.insert(out.end(), header, header + n);

    for (double v : img.samples()) append_u64_le(out, std::bit_cast<std::uint64_t>(v));
    return out;
}

Image read_raw(const std::vector<std::uint8_t>& bytes) {
    static constexpr char magic[] = "RAWF64 ";
    if (bytes.size() < 7 || !std::equal(magic, magic + 7, bytes.begin()))
        throw IoError(IoErrorKind::bad_magic, "RAWF64: missing magic");

    ByteReader r{bytes};
    r.pos = 7;
    long rows = r.read_uint("rows");
    long cols = r.read_uint("cols");
    if (rows <= 0 || cols <= 0)
        throw IoError(IoErrorKind::malformed_header, "RAWF64: nonpositive dimension");
    if (r.get() != '\n')
        throw IoError(IoErrorKind::malformed_header, "RAWF64: header must end in newline");

    std::size_t count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (bytes.size() - r.pos != 8 * count)
        throw IoError(IoErrorKind::size_mismatch,
                      "RAWF64: body is " + std::to_string(bytes.size() - r.pos) +
                          " bytes, expected " + std::to_string(8 * count));

    std::vector<double> samples(count);
    for (std::size_t i = 0; i < count; ++i) {
        samples[i] = std::bit_cast<double>(load_u64_le(bytes.data() + r.pos + 8 * i));
        if (!std::isfinite(samples[i]))
            throw IoError(IoErrorKind::non_finite_sample, "RAWF64: non-finite sample");
    }
    return Image(static_cast<int>(rows), static_cast<int>(cols), std::move(samples));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw std::runtime_error("read failed: " + path);
    return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

Image load_pgm(const std::string& path) { return read_pgm(read_file(path)); }
void save_pgm(const std::string& path, const Image& img) { write_file(path, write_pgm(img)); }
Image load_raw(const std::string& path) { return read_raw(read_file(path)); }
void save_raw(const std::string& path, const Image& img) { write_file(path, write_raw(img)); }

}  // namespace deblur
