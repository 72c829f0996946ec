#include <freqspec/synth.hpp>

#include <freqspec/error.hpp>
#include <freqspec/fft.hpp>
#include <freqspec/parallel.hpp>
#include <freqspec/rng.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>

namespace freqspec {

namespace {

// Independent stream tags so base field, mapping and artifacts never share draws.
enum Stream : std::uint64_t { kPhase = 1, kMapping = 2, kHfNoise = 3, kGridOffset = 4, kAxisPhase = 5, kImageSeed = 6 };

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int signed_freq(int i, int n) { return i <= n / 2 ? i : i - n; }

std::vector<double> standardize(std::vector<double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / static_cast<double>(v.size()));
    for (double& x : v) x = sd > 0 ? (x - mean) / sd : 0.0;
    return v;
}

// White noise with every bin below 3/4 of the Nyquist radius removed; unit variance.
std::vector<double> top_quartile_noise(int n, std::uint64_t key) {
    std::vector<fft::Complex> grid(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = rng::normal(key, i);
    fft::transform_2d(grid, n, n, false);
    const double rmax = n / 2.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const double u = signed_freq(c, n), v = signed_freq(r, n);
            if (std::sqrt(u * u + v * v) / rmax < 0.75) grid[static_cast<std::size_t>(r) * n + c] = 0.0;
        }
    fft::transform_2d(grid, n, n, true);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid[i].real();
    return standardize(std::move(out));
}

// Zero-mean line lattice of period 8, random offset per image, unit amplitude lines.
std::vector<double> line_lattice(int n, std::uint64_t key) {
    const int ox = static_cast<int>(rng::mix(key, 0) % 8), oy = static_cast<int>(rng::mix(key, 1) % 8);
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            out[static_cast<std::size_t>(y) * n + x] =
                ((x + ox) % 8 == 0 ? 1.0 : 0.0) + ((y + oy) % 8 == 0 ? 1.0 : 0.0) - 0.25;
    return out;
}

// Sum of horizontal and vertical cosines at frequencies 1..n/8 with random phases, unit variance.
std::vector<double> axis_stripes(int n, std::uint64_t key) {
    const int kmax = std::max(1, n / 8);
    std::vector<double> row(n, 0.0), col(n, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        const double ph = 2.0 * std::numbers::pi * rng::uniform(key, 2 * k);
        const double pv = 2.0 * std::numbers::pi * rng::uniform(key, 2 * k + 1);
        for (int i = 0; i < n; ++i) {
            row[i] += std::cos(2.0 * std::numbers::pi * k * i / n + ph);
            col[i] += std::cos(2.0 * std::numbers::pi * k * i / n + pv);
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) out[static_cast<std::size_t>(y) * n + x] = row[x] + col[y];
    return standardize(std::move(out));
}

// Natural base image as single-channel intensities (before tint and clamping).
std::vector<double> natural_gray(int n, double alpha, std::uint64_t seed) {
    std::vector<double> f = power_law_field(n, alpha, rng::mix(seed, kPhase));
    const std::uint64_t mk = rng::mix(seed, kMapping);
    const double brightness = 100.0 + 56.0 * rng::uniform(mk, 0);
    const double contrast = 25.0 + 25.0 * rng::uniform(mk, 1);
    for (double& v : f) v = brightness + contrast * v;
    return f;
}

Raster colorize(const std::vector<double>& gray, int n, std::uint64_t seed) {
    const std::uint64_t mk = rng::mix(seed, kMapping);
    Raster out(n, n, 3);
    double tint[3];
    for (int c = 0; c < 3; ++c) tint[c] = -8.0 + 16.0 * rng::uniform(mk, 10 + c);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = gray[static_cast<std::size_t>(y) * n + x] + tint[c];
    out.clamp();
    return out;
}

}  // namespace

std::string_view to_string(SynthKind kind) {
    switch (kind) {
        case SynthKind::Natural: return "natural";
        case SynthKind::HfNoise: return "hf_noise";
        case SynthKind::Grid: return "grid";
        case SynthKind::LowfreqAxis: return "lowfreq_axis";
        case SynthKind::Upsampled: return "upsampled";
    }
    return "unknown";
}

SynthKind parse_synth_kind(std::string_view name) {
    for (SynthKind k : {SynthKind::Natural, SynthKind::HfNoise, SynthKind::Grid, SynthKind::LowfreqAxis,
                        SynthKind::Upsampled})
        if (name == to_string(k)) return k;
    throw Error(ErrorCode::InvalidSpec, "unknown synth kind: " + std::string(name));
}

const std::vector<SynthKind>& fake_kinds() {
    static const std::vector<SynthKind> kinds = {SynthKind::HfNoise, SynthKind::Grid, SynthKind::LowfreqAxis,
                                                 SynthKind::Upsampled};
    return kinds;
}

void validate(const SynthSpec& spec) {
    if (!(spec.alpha > 0.0)) throw Error(ErrorCode::InvalidSpec, "alpha must be positive");
    if (!(spec.artifact_strength >= 0.0)) throw Error(ErrorCode::InvalidSpec, "artifact strength must be >= 0");
    if (!is_pow2(spec.size) || spec.size < 8) throw Error(ErrorCode::InvalidSpec, "size must be a power of two >= 8");
}

std::vector<double> power_law_field(int n, double alpha, std::uint64_t key) {
    std::vector<fft::Complex> grid(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const int u = signed_freq(c, n), v = signed_freq(r, n);
            if (u == 0 && v == 0) continue;
            // Hermitian symmetry: the phase is drawn once per conjugate pair, from its canonical member.
            const int mr = (n - r) % n, mc = (n - c) % n;
            const bool canonical = std::pair(r, c) <= std::pair(mr, mc);
            const std::size_t rep = canonical ? static_cast<std::size_t>(r) * n + c : static_cast<std::size_t>(mr) * n + mc;
            double phase = 2.0 * std::numbers::pi * rng::uniform(key, rep);
            if (!canonical) phase = -phase;
            const double f = std::sqrt(static_cast<double>(u) * u + static_cast<double>(v) * v);
            const double amp = std::pow(f, -alpha / 2.0);
            if (mr == r && mc == c) {
                grid[static_cast<std::size_t>(r) * n + c] = amp * std::cos(phase);
            } else {
                grid[static_cast<std::size_t>(r) * n + c] = std::polar(amp, phase);
            }
        }
    fft::transform_2d(grid, n, n, true);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid[i].real();
    return standardize(std::move(out));
}

Raster generate(const SynthSpec& spec) {
    validate(spec);
    const int n = spec.size;
    const double s = spec.artifact_strength;

    if (spec.kind == SynthKind::Upsampled) {
        const int m = n / 2;
        const std::vector<double> small = natural_gray(m, spec.alpha, spec.seed);
        std::vector<double> big(static_cast<std::size_t>(n) * n);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) big[static_cast<std::size_t>(y) * n + x] = small[static_cast<std::size_t>(y / 2) * m + x / 2];
        return colorize(big, n, spec.seed);
    }

    std::vector<double> gray = natural_gray(n, spec.alpha, spec.seed);
    if (s > 0.0) {
        std::vector<double> artifact;
        switch (spec.kind) {
            case SynthKind::HfNoise: artifact = top_quartile_noise(n, rng::mix(spec.seed, kHfNoise)); break;
            case SynthKind::Grid: artifact = line_lattice(n, rng::mix(spec.seed, kGridOffset)); break;
            case SynthKind::LowfreqAxis: artifact = axis_stripes(n, rng::mix(spec.seed, kAxisPhase)); break;
            default: break;
        }
        for (std::size_t i = 0; i < artifact.size(); ++i) gray[i] += s * artifact[i];
    }
    return colorize(gray, n, spec.seed);
}

std::map<SynthKind, double> CorpusConfig::default_strengths() {
    return {{SynthKind::HfNoise, 20.0}, {SynthKind::Grid, 20.0}, {SynthKind::LowfreqAxis, 20.0}, {SynthKind::Upsampled, 0.0}};
}

std::vector<CorpusItem> corpus_items(const CorpusConfig& cfg) {
    std::vector<CorpusItem> items;
    auto make = [&](SynthKind kind, std::uint64_t stream, int i) {
        const std::uint64_t seed = rng::mix(cfg.seed, stream, static_cast<std::uint64_t>(i));
        double alpha = cfg.alpha;
        if (cfg.alpha_jitter > 0.0)
            alpha += cfg.alpha_jitter * (2.0 * rng::uniform(rng::mix(seed, kImageSeed), 0) - 1.0);
        const auto it = cfg.strength.find(kind);
        const double strength = it != cfg.strength.end() ? it->second : 0.0;
        return SynthSpec{kind, cfg.size, alpha, strength, seed};
    };
    for (int i = 0; i < cfg.n_real; ++i) items.push_back({"real", i, make(SynthKind::Natural, 100, i)});
    for (SynthKind k : cfg.kinds) {
        if (k == SynthKind::Natural) throw Error(ErrorCode::InvalidSpec, "natural is the real source, not a fake kind");
        for (int i = 0; i < cfg.n_fake; ++i)
            items.push_back({std::string(to_string(k)), i, make(k, 200 + static_cast<std::uint64_t>(k), i)});
    }
    return items;
}

void write_corpus(const CorpusConfig& cfg, const std::filesystem::path& out_dir, unsigned threads) {
    const auto items = corpus_items(cfg);
    std::filesystem::create_directories(out_dir / "real");
    for (SynthKind k : cfg.kinds) std::filesystem::create_directories(out_dir / std::string(to_string(k)));
    parallel_for(items.size(), threads, [&](std::size_t i) {
        const auto& it = items[i];
        char name[32];
        std::snprintf(name, sizeof(name), "%05d.png", it.index);
        save_image(generate(it.spec), out_dir / it.source / name);
    });
}

}  // namespace freqspec
