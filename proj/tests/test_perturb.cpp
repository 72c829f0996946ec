#include <freqspec/error.hpp>
#include <freqspec/metrics.hpp>
#include <freqspec/oracles.hpp>
#include <freqspec/perturb.hpp>
#include <freqspec/spectrum.hpp>
#include <freqspec/synth.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace freqspec {
namespace {

Raster natural(int size, std::uint64_t seed) {
    Raster img = generate({SynthKind::Natural, size, 2.0, 0.0, seed});
    for (double& v : img.data()) v = std::round(v);
    return img;
}

Raster white_noise(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    Raster r(n, n, 1);
    for (double& v : r.data()) v = dist(rng);
    return r;
}

// Energy of DFT bins with normalized radius >= cutoff.
double high_band_energy(const Raster& gray, double cutoff) {
    const Spectrum m = centered_magnitude(gray);
    const int n = m.size;
    double e = 0.0;
    for (int v = -n / 2; v < n / 2; ++v)
        for (int u = -n / 2; u < n / 2; ++u)
            if (std::hypot(u, v) / (n / 2.0) >= cutoff) e += m.at_frequency(u, v) * m.at_frequency(u, v);
    return e;
}

double mean_of(const Raster& r) {
    double s = 0.0;
    for (double v : r.data()) s += v;
    return s / static_cast<double>(r.size());
}

TEST(Grid, ParameterGrids) {
    EXPECT_EQ(perturbation_grid(PerturbKind::Jpeg).size(), 9u);
    EXPECT_EQ(perturbation_grid(PerturbKind::Blur).size(), 7u);
    EXPECT_EQ(perturbation_grid(PerturbKind::Noise).size(), 6u);
    EXPECT_EQ(perturbation_grid(PerturbKind::Resize).size(), 6u);
    const auto sweep = full_sweep(9);
    ASSERT_EQ(sweep.size(), 28u);
    EXPECT_EQ(sweep.front().label(), "jpeg_10");
    EXPECT_EQ(sweep.back().label(), "resize_12");
    for (const auto& s : sweep) EXPECT_EQ(s.seed, 9u);
}

TEST(Grid, FromGridValidates) {
    EXPECT_NO_THROW(PerturbationSpec::from_grid(PerturbKind::Blur, 7));
    EXPECT_THROW(PerturbationSpec::from_grid(PerturbKind::Blur, 4), Error);
    EXPECT_THROW(PerturbationSpec::from_grid(PerturbKind::Jpeg, 100), Error);
    EXPECT_NO_THROW(PerturbationSpec::unchecked(PerturbKind::Jpeg, 100));
    EXPECT_EQ(parse_perturb_kind("resize"), PerturbKind::Resize);
    EXPECT_THROW(parse_perturb_kind("webp"), Error);
}

TEST(Jpeg, Quality100Floor) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Raster img = natural(64, seed);
        EXPECT_GE(psnr(jpeg_roundtrip(img, 100), img), 45.0) << seed;
    }
}

TEST(Jpeg, PsnrNonDecreasingInQuality) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Raster img = natural(128, 100 + seed);
        double prev = -1.0;
        for (double q : perturbation_grid(PerturbKind::Jpeg)) {
            const double p = psnr(jpeg_roundtrip(img, static_cast<int>(q)), img);
            EXPECT_GE(p, prev - 0.1) << "q=" << q;
            prev = p;
        }
    }
}

TEST(Jpeg, NearIdempotent) {
    const Raster img = natural(64, 7);
    for (int q : {50, 90}) {
        const Raster once = jpeg_roundtrip(img, q);
        const Raster twice = jpeg_roundtrip(once, q);
        std::size_t far = 0;
        for (std::size_t i = 0; i < once.size(); ++i)
            if (std::abs(once.data()[i] - twice.data()[i]) > 1.0) ++far;
        EXPECT_LE(far, once.size() / 100) << q;
    }
}

TEST(Jpeg, InvalidQuality) {
    const Raster img(8, 8, 3, 100.0);
    for (int q : {0, 101}) {
        try {
            jpeg_roundtrip(img, q);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidQuality);
        }
    }
}

TEST(Blur, KernelShape) {
    const auto k3 = gaussian_kernel(3);
    const double s = 0.8;
    const double side = std::exp(-1.0 / (2 * s * s));
    EXPECT_NEAR(k3[0], side / (1 + 2 * side), 1e-15);
    EXPECT_NEAR(k3[1], 1 / (1 + 2 * side), 1e-15);
    for (int k : {3, 5, 15}) {
        double sum = 0.0;
        for (double v : gaussian_kernel(k)) sum += v;
        EXPECT_NEAR(sum, 1.0, 1e-15);
    }
    EXPECT_EQ(gaussian_kernel(1), std::vector<double>{1.0});
}

TEST(Blur, ConstantUnchangedAndIdentity) {
    const Raster c(9, 6, 3, 77.0);
    for (int k : {3, 9, 15}) {
        const Raster out = gaussian_blur(c, k);
        for (double v : out.data()) EXPECT_NEAR(v, 77.0, 1e-12);
    }
    const Raster noise = white_noise(12, 1);
    EXPECT_EQ(gaussian_blur(noise, 1), noise);
}

TEST(Blur, ImpulseMatchesOuterProductOracle) {
    Raster g(9, 9, 1, 0.0);
    g.at(4, 4) = 1.0;
    const auto k1 = gaussian_kernel(3);
    std::vector<double> k2(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k2[i * 3 + j] = k1[i] * k1[j];
    const Raster out = gaussian_blur(g, 3);
    const Raster ref = oracles::direct_conv2(g, k2, 3);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out.data()[i], ref.data()[i], 1e-15);
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) EXPECT_NEAR(out.at(4 + dx, 4 + dy), k1[dx + 1] * k1[dy + 1], 1e-15);
}

TEST(Blur, MatchesDirectConvolutionAtBorders) {
    const Raster g = white_noise(20, 2);
    for (int k : {5, 9}) {
        const auto k1 = gaussian_kernel(k);
        std::vector<double> k2(k * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) k2[i * k + j] = k1[i] * k1[j];
        const Raster out = gaussian_blur(g, k);
        const Raster ref = oracles::direct_conv2(g, k2, k);
        for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out.data()[i], ref.data()[i], 1e-10);
    }
}

TEST(Blur, MeanPreservedAndHighBandStrictlyDecreasing) {
    const Raster g = white_noise(64, 3);
    const double m0 = mean_of(g);
    double prev = high_band_energy(g, 0.5);
    for (double k : perturbation_grid(PerturbKind::Blur)) {
        const Raster b = gaussian_blur(g, static_cast<int>(k));
        EXPECT_NEAR(mean_of(b), m0, 1e-6 * m0) << k;
        const double e = high_band_energy(b, 0.5);
        EXPECT_LT(e, prev) << k;
        prev = e;
    }
}

TEST(Blur, EvenKernelRejected) {
    try {
        gaussian_blur(Raster(4, 4, 1), 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EvenKernel);
    }
}

TEST(Noise, ZeroStdIsIdentity) {
    const Raster img = natural(32, 1);
    EXPECT_EQ(add_gaussian_noise(img, 0.0, 5), img);
    EXPECT_THROW(add_gaussian_noise(img, -1.0, 5), Error);
}

TEST(Noise, MomentsAndDeterminism) {
    const Raster flat(256, 256, 3, 128.0);
    for (double sd : {5.0, 10.0}) {
        const Raster out = add_gaussian_noise(flat, sd, 42);
        double s = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double d = out.data()[i] - 128.0;
            s += d;
            ss += d * d;
        }
        const double n = static_cast<double>(out.size());
        const double mean = s / n;
        const double stdev = std::sqrt(ss / n - mean * mean);
        EXPECT_LT(std::abs(mean), 0.05 * sd);
        EXPECT_NEAR(stdev, sd, 0.02 * sd);
        EXPECT_EQ(add_gaussian_noise(flat, sd, 42), out);
        EXPECT_NE(add_gaussian_noise(flat, sd, 43), out);
    }
}

TEST(Resize, ConstantPreservedAndShape) {
    const Raster c(50, 37, 3, 200.0);
    for (double f : perturbation_grid(PerturbKind::Resize)) {
        const Raster out = resize_down_up(c, static_cast<int>(f));
        EXPECT_EQ(out.width(), 50);
        EXPECT_EQ(out.height(), 37);
        for (double v : out.data()) EXPECT_NEAR(v, 200.0, 1e-9);
    }
    const Raster g = white_noise(16, 4);
    EXPECT_EQ(resize_down_up(g, 1), g);
}

TEST(Resize, Period4CosineAttenuated) {
    const int n = 64;
    Raster g(n, n, 1);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) g.at(x, y) = 128.0 + 100.0 * std::cos(2.0 * std::numbers::pi * x / 4.0);
    Raster centered = g;
    for (double& v : centered.data()) v -= 128.0;
    Raster out = resize_down_up(g, 4);
    for (double& v : out.data()) v -= 128.0;
    // Intermediate Nyquist at factor 4 is normalized radius 0.25.
    const double before = high_band_energy(centered, 0.25);
    const double after = high_band_energy(out, 0.25);
    EXPECT_LE(after * 10.0, before);
}

TEST(Resize, DegenerateIntermediate) {
    try {
        resize_down_up(Raster(10, 40, 1), 12);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateIntermediate);
    }
}

TEST(Apply, Dispatch) {
    const Raster img = natural(32, 2);
    EXPECT_EQ(apply(PerturbationSpec::from_grid(PerturbKind::Jpeg, 90), img), jpeg_roundtrip(img, 90));
    EXPECT_EQ(apply(PerturbationSpec::from_grid(PerturbKind::Blur, 5), img), gaussian_blur(img, 5));
    EXPECT_EQ(apply(PerturbationSpec::from_grid(PerturbKind::Noise, 5, 3), img), add_gaussian_noise(img, 5, 3));
    EXPECT_EQ(apply(PerturbationSpec::from_grid(PerturbKind::Resize, 2), img), resize_down_up(img, 2));
}

TEST(Apply, DistinctKeysGiveIndependentStreams) {
    const Raster flat(64, 64, 1, 128.0);
    const Raster a = add_gaussian_noise(flat, 10, 1001);
    const Raster b = add_gaussian_noise(flat, 10, 1002);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.data()[i] - 128.0, y = b.data()[i] - 128.0;
        sab += x * y;
        saa += x * x;
        sbb += y * y;
    }
    // Correlation of two independent 4096-sample streams: |r| well under 4 / sqrt(n).
    EXPECT_LT(std::abs(sab / std::sqrt(saa * sbb)), 4.0 / 64.0);
}

}  // namespace
}  // namespace freqspec
