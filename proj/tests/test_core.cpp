#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstring>
#include <limits>

#include "deblur/image.hpp"
#include "deblur/io.hpp"
#include "support.hpp"

using namespace deblur;
using testsupport::random_image;

namespace {

std::vector<std::uint8_t> bytes_of(const char* s) {
    return std::vector<std::uint8_t>(s, s + std::strlen(s));
}

}  // namespace

TEST_CASE("frobenius_norm basics") {
    CHECK(frobenius_norm(Image(4, 4, 0.0)) == 0.0);
    CHECK(frobenius_norm(Image(2, 2, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(frobenius_norm(Image(1, 2, {3.0, 4.0})) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("frobenius_norm is absolutely homogeneous") {
    Image img = random_image(13, 7, 42, -10.0, 10.0);
    double base = frobenius_norm(img);
    for (double c : {-3.5, 0.25, 7.0}) {
        CHECK(frobenius_norm(scale(img, c)) ==
              doctest::Approx(std::abs(c) * base).epsilon(1e-12));
    }
}

TEST_CASE("image constructor validates") {
    CHECK_THROWS_AS(Image(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Image(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("read_pgm decodes a minimal file") {
    auto bytes = bytes_of("P5\n1 1\n255\n");
    bytes.push_back(0x80);
    Image img = read_pgm(bytes);
    CHECK(img.rows() == 1);
    CHECK(img.cols() == 1);
    CHECK(img(0, 0) == 128.0);
}

TEST_CASE("read_pgm accepts comments and extra whitespace") {
    auto bytes = bytes_of("P5 # a comment\n# another\n 2\t1 \n255\n");
    bytes.push_back(7);
    bytes.push_back(250);
    Image img = read_pgm(bytes);
    CHECK(img.rows() == 1);
    CHECK(img.cols() == 2);
    CHECK(img(0, 0) == 7.0);
    CHECK(img(0, 1) == 250.0);
}

TEST_CASE("pgm round trips") {
    SUBCASE("bytes: write(read(b)) == b for a canonical-header payload") {
        auto bytes = bytes_of("P5\n3 2\n255\n");
        for (std::uint8_t v : {0, 1, 127, 128, 254, 255}) bytes.push_back(v);
        CHECK(write_pgm(read_pgm(bytes)) == bytes);
    }
    SUBCASE("images: read(write(img)) == img for integer samples in range") {
        Image img = random_image(9, 11, 3);
        for (double& v : img.samples()) v = std::floor(v);  // integers in [0,255)
        Image back = read_pgm(write_pgm(img));
        CHECK(testsupport::max_abs_diff(img, back) == 0.0);
    }
}

TEST_CASE("pgm parse errors are distinct") {
    auto truncated = bytes_of("P5\n2 2\n255\n");
    truncated.push_back(1);
    truncated.push_back(2);
    truncated.push_back(3);  // one byte short

    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P6\n1 1\n255\nx")), doctest::Contains("magic"),
                         IoError);
    try {
        read_pgm(truncated);
        FAIL("expected truncated-data error");
    } catch (const IoError& e) {
        CHECK(e.kind() == IoErrorKind::truncated_data);
    }
    try {
        auto wide = bytes_of("P5\n1 1\n65535\n");
        wide.push_back(0);
        wide.push_back(0);
        read_pgm(wide);
        FAIL("expected unsupported-maxval error");
    } catch (const IoError& e) {
        CHECK(e.kind() == IoErrorKind::unsupported_maxval);
    }
    try {
        read_pgm(bytes_of("P5\nabc\n"));
        FAIL("expected malformed-header error");
    } catch (const IoError& e) {
        CHECK(e.kind() == IoErrorKind::malformed_header);
    }
}

TEST_CASE("write_pgm clamps then rounds half-away-from-zero") {
    auto low = write_pgm(Image(1, 1, {-5.0}));
    CHECK(low.back() == 0);
    auto high = write_pgm(Image(1, 1, {300.0}));
    CHECK(high.back() == 255);
    auto mid = write_pgm(Image(1, 1, {127.5}));
    CHECK(mid.back() == 128);
    auto half = write_pgm(Image(1, 1, {0.5}));
    CHECK(half.back() == 1);
}

TEST_CASE("write_pgm canonical header") {
    auto bytes = write_pgm(Image(2, 3, 0.0));
    const char expect[] = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == std::strlen(expect) + 6);
    CHECK(std::equal(expect, expect + std::strlen(expect), bytes.begin()));
}

TEST_CASE("rawf64 round trip is bit-exact") {
    Image img = random_image(16, 16, 99, -1e6, 1e6);
    Image back = read_raw(write_raw(img));
    REQUIRE(back.rows() == img.rows());
    REQUIRE(back.cols() == img.cols());
    for (std::size_t i = 0; i < img.size(); ++i) {
        CHECK(std::bit_cast<std::uint64_t>(img.samples()[i]) ==
              std::bit_cast<std::uint64_t>(back.samples()[i]));
    }
}

TEST_CASE("rawf64 encoding of 1x1 value 1.0") {
    auto bytes = write_raw(Image(1, 1, {1.0}));
    const char header[] = "RAWF64 1 1\n";
    REQUIRE(bytes.size() == std::strlen(header) + 8);
    CHECK(std::equal(header, header + std::strlen(header), bytes.begin()));
    const std::uint8_t payload[8] = {0, 0, 0, 0, 0, 0, 0xF0, 0x3F};
    CHECK(std::equal(payload, payload + 8, bytes.end() - 8));
}

TEST_CASE("rawf64 errors") {
    try {
        auto bytes = bytes_of("RAWF64 2 2\n");
        bytes.resize(bytes.size() + 24, 0);  // 24 body bytes, 32 expected
        read_raw(bytes);
        FAIL("expected size-mismatch error");
    } catch (const IoError& e) {
        CHECK(e.kind() == IoErrorKind::size_mismatch);
    }
    try {
        read_raw(bytes_of("RAWF32 1 1\n12345678"));
        FAIL("expected bad-magic error");
    } catch (const IoError& e) {
        CHECK(e.kind() == IoErrorKind::bad_magic);
    }
    try {
        Image inf_img(1, 1, {std::numeric_limits<double>::infinity()});
        read_raw(write_raw(inf_img));
        FAIL("expected non-finite-sample error");
    } catch (const IoError& e) {
        CHECK(e.kind() == IoErrorKind::non_finite_sample);
    }
}
