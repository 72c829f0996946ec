#include <freqspec/perturb.hpp>

#include <freqspec/error.hpp>
#include <freqspec/rng.hpp>

#include <algorithm>
#include <cmath>

namespace freqspec {

std::string_view to_string(PerturbKind kind) {
    switch (kind) {
        case PerturbKind::Jpeg: return "jpeg";
        case PerturbKind::Blur: return "blur";
        case PerturbKind::Noise: return "noise";
        case PerturbKind::Resize: return "resize";
    }
    return "unknown";
}

PerturbKind parse_perturb_kind(std::string_view name) {
    if (name == "jpeg") return PerturbKind::Jpeg;
    if (name == "blur") return PerturbKind::Blur;
    if (name == "noise") return PerturbKind::Noise;
    if (name == "resize") return PerturbKind::Resize;
    throw Error(ErrorCode::InvalidArgument, "unknown perturbation kind: " + std::string(name));
}

std::vector<double> perturbation_grid(PerturbKind kind) {
    switch (kind) {
        case PerturbKind::Jpeg: return {10, 20, 30, 40, 50, 60, 70, 80, 90};
        case PerturbKind::Blur: return {3, 5, 7, 9, 11, 13, 15};
        case PerturbKind::Noise: return {5, 10, 15, 20, 25, 30};
        case PerturbKind::Resize: return {2, 4, 6, 8, 10, 12};
    }
    return {};
}

bool higher_param_is_milder(PerturbKind kind) { return kind == PerturbKind::Jpeg; }

PerturbationSpec PerturbationSpec::from_grid(PerturbKind kind, double param, std::uint64_t seed) {
    const auto grid = perturbation_grid(kind);
    if (std::find(grid.begin(), grid.end(), param) == grid.end())
        throw Error(ErrorCode::InvalidArgument,
                    "parameter " + std::to_string(param) + " is not on the " + std::string(to_string(kind)) + " grid");
    return {kind, param, seed};
}

PerturbationSpec PerturbationSpec::unchecked(PerturbKind kind, double param, std::uint64_t seed) {
    return {kind, param, seed};
}

std::string PerturbationSpec::label() const {
    const double rounded = std::round(param);
    std::string p = rounded == param ? std::to_string(static_cast<long long>(rounded)) : std::to_string(param);
    return std::string(to_string(kind)) + "_" + p;
}

std::vector<PerturbationSpec> full_sweep(std::uint64_t seed) {
    std::vector<PerturbationSpec> out;
    for (PerturbKind k : {PerturbKind::Jpeg, PerturbKind::Blur, PerturbKind::Noise, PerturbKind::Resize})
        for (double p : perturbation_grid(k)) out.push_back(PerturbationSpec::from_grid(k, p, seed));
    return out;
}

Raster jpeg_roundtrip(const Raster& img, int quality) {
    if (quality < 1 || quality > 100) throw Error(ErrorCode::InvalidQuality, "JPEG quality must be in 1..100");
    Raster out = decode_image(encode_jpeg(img, quality));
    out.clamp();
    return out;
}

std::vector<double> gaussian_kernel(int kernel_size) {
    if (kernel_size < 1 || kernel_size % 2 == 0) throw Error(ErrorCode::EvenKernel, "blur kernel size must be odd");
    const double sigma = 0.3 * ((kernel_size - 1) * 0.5 - 1.0) + 0.8;
    const int r = kernel_size / 2;
    std::vector<double> k(kernel_size);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[i + r];
    }
    for (double& v : k) v /= sum;
    return k;
}

Raster gaussian_blur(const Raster& img, int kernel_size) {
    const auto k = gaussian_kernel(kernel_size);
    if (kernel_size == 1) return img;
    const int r = kernel_size / 2;
    const int w = img.width(), h = img.height(), c = img.channels();

    Raster horiz(w, h, c);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int ch = 0; ch < c; ++ch) {
                double acc = 0.0;
                for (int t = -r; t <= r; ++t) acc += k[t + r] * img.at(reflect_index(x + t, w), y, ch);
                horiz.at(x, y, ch) = acc;
            }
    Raster out(w, h, c);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int ch = 0; ch < c; ++ch) {
                double acc = 0.0;
                for (int t = -r; t <= r; ++t) acc += k[t + r] * horiz.at(x, reflect_index(y + t, h), ch);
                out.at(x, y, ch) = acc;
            }
    out.clamp();
    return out;
}

Raster add_gaussian_noise(const Raster& img, double std_dev, std::uint64_t seed) {
    if (!(std_dev >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise std must be non-negative");
    if (std_dev == 0.0) return img;
    Raster out = img;
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += std_dev * rng::normal(seed, i);
    out.clamp();
    return out;
}

Raster resize_down_up(const Raster& img, int factor) {
    if (factor < 1) throw Error(ErrorCode::InvalidArgument, "resize factor must be >= 1");
    const int w = img.width() / factor, h = img.height() / factor;
    if (w < 1 || h < 1) throw Error(ErrorCode::DegenerateIntermediate, "intermediate size collapses to zero");
    const Raster small = resize(img, w, h, Interpolation::Bicubic);
    return resize(small, img.width(), img.height(), Interpolation::Bicubic);
}

Raster apply(const PerturbationSpec& spec, const Raster& img) {
    switch (spec.kind) {
        case PerturbKind::Jpeg: return jpeg_roundtrip(img, static_cast<int>(spec.param));
        case PerturbKind::Blur: return gaussian_blur(img, static_cast<int>(spec.param));
        case PerturbKind::Noise: return add_gaussian_noise(img, spec.param, spec.seed);
        case PerturbKind::Resize: return resize_down_up(img, static_cast<int>(spec.param));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown perturbation kind");
}

}  // namespace freqspec
