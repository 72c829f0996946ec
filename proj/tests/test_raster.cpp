#include <freqspec/error.hpp>
#include <freqspec/raster.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace freqspec {
namespace {

Raster random_raster(int w, int h, int c, std::mt19937_64& rng, bool integral) {
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    Raster r(w, h, c);
    for (double& v : r.data()) v = integral ? std::round(dist(rng)) : dist(rng);
    return r;
}

TEST(Raster, ConstructorValidatesShape) {
    EXPECT_THROW(Raster(0, 3, 1), Error);
    EXPECT_THROW(Raster(2, 2, 2), Error);
    EXPECT_THROW(Raster(2, 2, 1, std::vector<double>(3)), Error);
    const Raster r(3, 2, 3, 7.0);
    EXPECT_EQ(r.size(), 18u);
}

TEST(Raster, ReflectIndexRepeatsEdge) {
    EXPECT_EQ(reflect_index(-1, 5), 0);
    EXPECT_EQ(reflect_index(-2, 5), 1);
    EXPECT_EQ(reflect_index(5, 5), 4);
    EXPECT_EQ(reflect_index(6, 5), 3);
    EXPECT_EQ(reflect_index(2, 5), 2);
    EXPECT_EQ(reflect_index(-7, 1), 0);
    EXPECT_EQ(reflect_index(-3, 2), 1);  // beyond one period
}

TEST(ImageIo, DecodesConstantRedPng) {
    Raster red(2, 2, 3);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) red.at(x, y, 0) = 255;
    const Raster back = decode_image(encode_png(red));
    ASSERT_EQ(back.channels(), 3);
    EXPECT_EQ(back.width(), 2);
    EXPECT_EQ(back.height(), 2);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) {
            EXPECT_EQ(back.at(x, y, 0), 255);
            EXPECT_EQ(back.at(x, y, 1), 0);
            EXPECT_EQ(back.at(x, y, 2), 0);
        }
}

TEST(ImageIo, DecodesGrayRamp) {
    const Raster ramp(4, 1, 1, std::vector<double>{0, 1, 2, 3});
    const Raster back = decode_image(encode_png(ramp));
    EXPECT_EQ(back, ramp);
}

TEST(ImageIo, PngRoundTripIsPixelExact) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 40), h = 1 + static_cast<int>(rng() % 40);
        const int c = trial % 2 ? 3 : 1;
        const Raster r = random_raster(w, h, c, rng, true);
        EXPECT_EQ(decode_image(encode_png(r)), r);
    }
}

TEST(ImageIo, EncodeQuantizesAndClamps) {
    const Raster r(3, 1, 1, std::vector<double>{-4.0, 12.4, 300.0});
    const Raster back = decode_image(encode_png(r));
    EXPECT_EQ(back.at(0, 0), 0);
    EXPECT_EQ(back.at(1, 0), 12);
    EXPECT_EQ(back.at(2, 0), 255);
}

TEST(ImageIo, RejectsUnknownAndCorruptStreams) {
    const std::vector<std::uint8_t> junk = {'G', 'I', 'F', '8', '9', 'a', 0, 0};
    try {
        decode_image(junk);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedFormat);
    }

    std::mt19937_64 rng(3);
    auto png = encode_png(random_raster(16, 16, 3, rng, true));
    png.resize(png.size() / 2);
    try {
        decode_image(png);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CorruptStream);
    }

    auto jpg = encode_jpeg(random_raster(16, 16, 3, rng, true), 80);
    jpg.resize(20);
    try {
        decode_image(jpg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CorruptStream);
    }
}

TEST(ImageIo, JpegDecodesToSameShape) {
    std::mt19937_64 rng(5);
    const Raster r = random_raster(24, 17, 3, rng, true);
    const Raster back = decode_image(encode_jpeg(r, 90));
    EXPECT_EQ(back.width(), 24);
    EXPECT_EQ(back.height(), 17);
    EXPECT_EQ(back.channels(), 3);
}

TEST(ImageIo, ProbeDimensions) {
    std::mt19937_64 rng(9);
    const Raster r = random_raster(37, 12, 3, rng, true);
    auto d = probe_dimensions(encode_png(r));
    EXPECT_EQ(d.width, 37);
    EXPECT_EQ(d.height, 12);
    d = probe_dimensions(encode_jpeg(r, 50));
    EXPECT_EQ(d.width, 37);
    EXPECT_EQ(d.height, 12);
}

TEST(ImageIo, PgmHeaderAndPayload) {
    const Raster r(2, 1, 1, std::vector<double>{0, 255});
    const auto bytes = encode_pgm(r);
    const std::string text(bytes.begin(), bytes.begin() + 11);
    EXPECT_EQ(text, "P5\n2 1\n255\n");
    ASSERT_EQ(bytes.size(), 13u);
    EXPECT_EQ(bytes[11], 0);
    EXPECT_EQ(bytes[12], 255);
}

TEST(Grayscale, UnweightedMean) {
    const Raster px(1, 1, 3, std::vector<double>{30, 60, 90});
    EXPECT_EQ(to_grayscale(px).at(0, 0), 60.0);
}

TEST(Grayscale, SingleChannelUnchanged) {
    std::mt19937_64 rng(1);
    const Raster g = random_raster(5, 4, 1, rng, false);
    EXPECT_EQ(to_grayscale(g), g);
}

TEST(Grayscale, MatchesScalarLoop) {
    std::mt19937_64 rng(2);
    const Raster c = random_raster(4, 4, 3, rng, false);
    const Raster g = to_grayscale(c);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
            const double expected = (c.at(x, y, 0) + c.at(x, y, 1) + c.at(x, y, 2)) / 3.0;
            EXPECT_DOUBLE_EQ(g.at(x, y), expected);
        }
}

TEST(Resize, PreservesConstants) {
    for (Interpolation m : {Interpolation::Bilinear, Interpolation::Bicubic})
        for (auto [w, h] : {std::pair{3, 5}, std::pair{17, 9}, std::pair{64, 64}, std::pair{1, 1}}) {
            const Raster c(16, 16, 3, 77.25);
            const Raster out = resize(c, w, h, m);
            for (double v : out.data()) EXPECT_NEAR(v, 77.25, 1e-12);
        }
}

TEST(Resize, IdentityGeometryIsExact) {
    std::mt19937_64 rng(4);
    const Raster r = random_raster(13, 7, 3, rng, false);
    EXPECT_EQ(resize(r, 13, 7, Interpolation::Bilinear), r);
    EXPECT_EQ(resize(r, 13, 7, Interpolation::Bicubic), r);
}

TEST(Resize, BilinearHalvingEqualsBlockMeans) {
    std::mt19937_64 rng(6);
    const Raster r = random_raster(4, 4, 1, rng, false);
    const Raster out = resize(r, 2, 2, Interpolation::Bilinear);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) {
            // Direct 2x2 box convolution sampled at block centers.
            double sum = 0.0;
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) sum += r.at(2 * x + dx, 2 * y + dy);
            EXPECT_NEAR(out.at(x, y), sum / 4.0, 1e-12);
        }
}

TEST(Resize, BicubicOutputClamped) {
    // A hard edge overshoots with Catmull-Rom; the result must still be in range.
    Raster r(8, 1, 1);
    for (int x = 4; x < 8; ++x) r.at(x, 0) = 255;
    const Raster out = resize(r, 21, 1, Interpolation::Bicubic);
    for (double v : out.data()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 255.0);
    }
}

TEST(Resize, ZeroDimensionRejected) {
    const Raster r(4, 4, 1);
    try {
        resize(r, 0, 3, Interpolation::Bilinear);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroDimension);
    }
}

TEST(Resize, CenterCropSquare) {
    Raster r(6, 4, 1);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 6; ++x) r.at(x, y) = x * 10 + y;
    const Raster c = center_crop_square(r);
    ASSERT_EQ(c.width(), 4);
    ASSERT_EQ(c.height(), 4);
    EXPECT_EQ(c.at(0, 0), 10);
    EXPECT_EQ(c.at(3, 3), 43);
}

}  // namespace
}  // namespace freqspec
