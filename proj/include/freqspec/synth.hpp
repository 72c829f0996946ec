#pragma once

#include <freqspec/raster.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace freqspec {

/// Proxy generator fingerprints:
///  - Natural:     Gaussian random field with power spectrum ~ 1/f^alpha.
///  - HfNoise:     natural + white noise restricted to the top radial quartile.
///  - Grid:        natural + period-8 line lattice (harmonic peaks on both axes).
///  - LowfreqAxis: natural + low-frequency separable stripes (energy on the u = 0 / v = 0 axes).
///  - Upsampled:   natural at size/2, nearest-neighbor upscaled x2 (spectral replicas).
enum class SynthKind { Natural, HfNoise, Grid, LowfreqAxis, Upsampled };

std::string_view to_string(SynthKind kind);
SynthKind parse_synth_kind(std::string_view name);
const std::vector<SynthKind>& fake_kinds();

struct SynthSpec {
    SynthKind kind = SynthKind::Natural;
    int size = 256;
    double alpha = 2.0;
    double artifact_strength = 0.0;  // artifact amplitude in intensity units
    std::uint64_t seed = 0;
};

void validate(const SynthSpec& spec);

/// Deterministic 3-channel image in [0, 255]; same spec gives identical output.
Raster generate(const SynthSpec& spec);

/// Unit-variance, zero-mean field with isotropic power spectrum ~ 1/f^alpha (DC removed).
std::vector<double> power_law_field(int size, double alpha, std::uint64_t key);

struct CorpusConfig {
    int n_real = 500;
    int n_fake = 500;  // per fake kind
    int size = 128;
    double alpha = 2.0;
    double alpha_jitter = 0.25; // per-image alpha drawn uniformly from alpha +/- jitter
    std::vector<SynthKind> kinds = fake_kinds();
    std::map<SynthKind, double> strength = default_strengths();
    std::uint64_t seed = 0;

    static std::map<SynthKind, double> default_strengths();
};

/// Per-image specs in deterministic order: `real` (natural) first, then each fake kind.
struct CorpusItem {
    std::string source;  // "real" or the kind name
    int index;
    SynthSpec spec;
};
std::vector<CorpusItem> corpus_items(const CorpusConfig& cfg);

/// Writes <out_dir>/<source>/<index>.png for every item.
void write_corpus(const CorpusConfig& cfg, const std::filesystem::path& out_dir, unsigned threads = 1);

}  // namespace freqspec
