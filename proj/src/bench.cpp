#include <freqspec/bench.hpp>

#include <freqspec/error.hpp>
#include <freqspec/metrics.hpp>
#include <freqspec/parallel.hpp>
#include <freqspec/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace freqspec {

namespace fs = std::filesystem;

std::string to_string(Split split) {
    switch (split) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    return "unknown";
}

Split parse_split(const std::string& name) {
    if (name == "train") return Split::Train;
    if (name == "val") return Split::Val;
    if (name == "test") return Split::Test;
    throw Error(ErrorCode::SchemaMismatch, "unknown split: " + name);
}

std::string to_string(FeatureSet set) { return set == FeatureSet::Frequency ? "freq" : "pixel"; }

FeatureSet parse_feature_set(const std::string& name) {
    if (name == "freq") return FeatureSet::Frequency;
    if (name == "pixel") return FeatureSet::PixelStats;
    throw Error(ErrorCode::InvalidArgument, "unknown feature set: " + name);
}

std::vector<std::string> Manifest::sources() const {
    std::set<std::string> s;
    for (const auto& e : entries) s.insert(e.source);
    return {s.begin(), s.end()};
}

std::array<std::size_t, 3> split_counts(std::size_t n, const SplitRatios& r) {
    const double total = r.train + r.val + r.test;
    if (!(r.train >= 0 && r.val >= 0 && r.test >= 0) || !(total > 0))
        throw Error(ErrorCode::InvalidArgument, "split ratios must be non-negative with a positive sum");
    const std::array<double, 3> quota = {n * r.train / total, n * r.val / total, n * r.test / total};
    std::array<std::size_t, 3> counts{};
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        counts[i] = static_cast<std::size_t>(std::floor(quota[i] + 1e-9));
        assigned += counts[i];
    }
    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return quota[a] - static_cast<double>(counts[a]) > quota[b] - static_cast<double>(counts[b]) + 1e-12;
    });
    for (int k = 0; assigned < n; k = (k + 1) % 3) {
        ++counts[order[k]];
        ++assigned;
    }
    return counts;
}

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

Manifest build_manifest(const fs::path& root, const SplitRatios& ratios, int resolution) {
    if (!fs::is_directory(root)) throw Error(ErrorCode::IoFailure, "not a directory: " + root.string());
    if (!fs::is_directory(root / "real")) throw Error(ErrorCode::MissingRealSet, "no real/ directory under " + root.string());

    std::vector<std::string> sources;
    for (const auto& d : fs::directory_iterator(root))
        if (d.is_directory()) sources.push_back(d.path().filename().string());
    std::sort(sources.begin(), sources.end());

    Manifest m;
    m.root = root;
    for (const auto& source : sources) {
        std::vector<std::string> files;
        for (const auto& f : fs::directory_iterator(root / source))
            if (f.is_regular_file() && is_image_file(f.path())) files.push_back(source + "/" + f.path().filename().string());
        if (files.empty()) throw Error(ErrorCode::EmptySource, "source has no images: " + source);

        std::sort(files.begin(), files.end(), [](const std::string& a, const std::string& b) {
            const auto ha = rng::fnv1a(a), hb = rng::fnv1a(b);
            return ha != hb ? ha < hb : a < b;
        });
        const auto counts = split_counts(files.size(), ratios);
        for (std::size_t i = 0; i < files.size(); ++i) {
            ManifestEntry e;
            e.path = files[i];
            e.source = source;
            e.label = source == "real" ? 0 : 1;
            e.split = i < counts[0] ? Split::Train : i < counts[0] + counts[1] ? Split::Val : Split::Test;
            const auto dims = probe_dimensions(read_file(root / files[i]));
            e.downscale = dims.width > resolution || dims.height > resolution;
            m.entries.push_back(std::move(e));
        }
    }
    std::sort(m.entries.begin(), m.entries.end(), [](const ManifestEntry& a, const ManifestEntry& b) {
        return a.source != b.source ? a.source < b.source : a.path < b.path;
    });
    return m;
}

void save_manifest(const Manifest& manifest, const fs::path& path) {
    nlohmann::json j;
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    fs::path rel = fs::relative(fs::absolute(manifest.root), fs::absolute(base));
    if (rel.empty()) rel = fs::absolute(manifest.root);
    j["root"] = rel.generic_string();
    j["entries"] = nlohmann::json::array();
    for (const auto& e : manifest.entries)
        j["entries"].push_back({{"path", e.path},
                                {"label", e.label == 1 ? "fake" : "real"},
                                {"source", e.source},
                                {"split", to_string(e.split)},
                                {"downscale", e.downscale}});
    const std::string text = j.dump(2) + "\n";
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Manifest load_manifest(const fs::path& path) {
    const auto bytes = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("manifest is not valid JSON: ") + e.what());
    }
    Manifest m;
    try {
        const fs::path root = j.at("root").get<std::string>();
        m.root = root.is_absolute() ? root : (path.has_parent_path() ? path.parent_path() : fs::path(".")) / root;
        std::set<std::string> seen;
        for (const auto& je : j.at("entries")) {
            ManifestEntry e;
            e.path = je.at("path").get<std::string>();
            const std::string label = je.at("label").get<std::string>();
            if (label != "real" && label != "fake") throw Error(ErrorCode::SchemaMismatch, "bad label: " + label);
            e.label = label == "fake" ? 1 : 0;
            e.source = je.at("source").get<std::string>();
            e.split = parse_split(je.at("split").get<std::string>());
            e.downscale = je.value("downscale", false);
            if (!seen.insert(e.path).second) throw Error(ErrorCode::SchemaMismatch, "duplicate path: " + e.path);
            if (!fs::exists(m.root / e.path)) throw Error(ErrorCode::IoFailure, "missing file: " + (m.root / e.path).string());
            m.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("manifest schema: ") + e.what());
    }
    return m;
}

std::vector<double> pixel_stats_features(const Raster& img) {
    const Raster g = to_grayscale(img);
    const auto d = g.data();
    const double n = static_cast<double>(d.size());
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : d) var += (v - mean) * (v - mean);
    var /= n;
    double grad = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) {
            double e = 0.0;
            if (x + 1 < g.width()) e += (g.at(x + 1, y) - g.at(x, y)) * (g.at(x + 1, y) - g.at(x, y));
            if (y + 1 < g.height()) e += (g.at(x, y + 1) - g.at(x, y)) * (g.at(x, y + 1) - g.at(x, y));
            grad += e;
            ++count;
        }
    return {mean, var, grad / static_cast<double>(count)};
}

std::vector<double> compute_features(const Raster& img, const EvalConfig& cfg) {
    if (cfg.features == FeatureSet::PixelStats) return pixel_stats_features(img);
    return image_features(img, cfg.spectrum()).flatten();
}

Raster load_entry(const Manifest& manifest, const ManifestEntry& entry, const EvalConfig& cfg) {
    if (cfg.resolution <= 0) throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
    Raster img = load_image(manifest.root / entry.path);
    if (img.width() > cfg.resolution || img.height() > cfg.resolution)
        img = resize(img, cfg.resolution, cfg.resolution, Interpolation::Bilinear);
    return img;
}

std::vector<const ManifestEntry*> select_entries(const Manifest& manifest, Split split,
                                                 const std::set<std::string>& sources, const EvalConfig& cfg) {
    std::map<std::string, std::vector<const ManifestEntry*>> by_source;
    for (const auto& e : manifest.entries)
        if (e.split == split && sources.count(e.source)) by_source[e.source].push_back(&e);
    std::vector<const ManifestEntry*> out;
    for (auto& [source, list] : by_source) {
        if (cfg.sample_cap > 0 && list.size() > static_cast<std::size_t>(cfg.sample_cap)) {
            std::sort(list.begin(), list.end(), [&](const ManifestEntry* a, const ManifestEntry* b) {
                const auto ka = rng::mix(cfg.seed, rng::fnv1a(a->path)), kb = rng::mix(cfg.seed, rng::fnv1a(b->path));
                return ka != kb ? ka < kb : a->path < b->path;
            });
            list.resize(static_cast<std::size_t>(cfg.sample_cap));
            std::sort(list.begin(), list.end(), [](const ManifestEntry* a, const ManifestEntry* b) { return a->path < b->path; });
        }
        out.insert(out.end(), list.begin(), list.end());
    }
    return out;
}

std::vector<std::vector<double>> extract_entry_features(const Manifest& manifest,
                                                        const std::vector<const ManifestEntry*>& entries,
                                                        const EvalConfig& cfg,
                                                        const std::optional<PerturbationSpec>& perturbation) {
    std::vector<std::vector<double>> out(entries.size());
    parallel_for(entries.size(), cfg.threads, [&](std::size_t i) {
        Raster img = load_entry(manifest, *entries[i], cfg);
        if (perturbation) {
            PerturbationSpec spec = *perturbation;
            spec.seed = rng::mix(perturbation->seed, rng::fnv1a(entries[i]->path));
            img = apply(spec, img);
        }
        out[i] = compute_features(img, cfg);
    });
    return out;
}

std::string join_sources(const std::set<std::string>& sources) {
    std::string out;
    for (const auto& s : sources) {
        if (!out.empty()) out += '+';
        out += s;
    }
    return out;
}

namespace {

void require_sources(const Manifest& manifest, const std::set<std::string>& wanted) {
    const auto present = manifest.sources();
    for (const auto& s : wanted)
        if (std::find(present.begin(), present.end(), s) == present.end())
            throw Error(ErrorCode::UnknownSource, "source not in manifest: " + s);
    if (std::find(present.begin(), present.end(), "real") == present.end())
        throw Error(ErrorCode::MissingRealSet, "manifest has no real source");
}

std::set<std::string> fake_sources(const Manifest& manifest) {
    std::set<std::string> out;
    for (const auto& s : manifest.sources())
        if (s != "real") out.insert(s);
    return out;
}

ReportRow score_row(const ClassifierModel& model, const std::vector<std::vector<double>>& real,
                    const std::vector<std::vector<double>>& fake) {
    std::vector<ScoredSample> samples;
    samples.reserve(real.size() + fake.size());
    for (const auto& f : real) samples.push_back({0, score(model, f)});
    for (const auto& f : fake) samples.push_back({1, score(model, f)});
    ReportRow row;
    row.auc = auc(samples);
    row.ap = average_precision(samples);
    row.n_real = real.size();
    row.n_fake = fake.size();
    return row;
}

}  // namespace

EvalReport evaluate_model(const Manifest& manifest, const ClassifierModel& model, const std::string& train_label,
                          const std::set<std::string>& test_sources, const EvalConfig& cfg) {
    require_sources(manifest, test_sources);
    const auto real_entries = select_entries(manifest, Split::Test, {"real"}, cfg);
    const auto real = extract_entry_features(manifest, real_entries, cfg);

    EvalReport report;
    double auc_sum = 0.0, ap_sum = 0.0;
    std::size_t fake_total = 0;
    for (const auto& source : test_sources) {
        const auto fake = extract_entry_features(manifest, select_entries(manifest, Split::Test, {source}, cfg), cfg);
        ReportRow row = score_row(model, real, fake);
        row.train_sources = train_label;
        row.test_source = source;
        auc_sum += row.auc;
        ap_sum += row.ap;
        fake_total += row.n_fake;
        report.rows.push_back(std::move(row));
    }
    if (!report.rows.empty()) {
        ReportRow avg;
        avg.train_sources = train_label;
        avg.test_source = "average";
        avg.auc = auc_sum / static_cast<double>(report.rows.size());
        avg.ap = ap_sum / static_cast<double>(report.rows.size());
        avg.n_real = real.size();
        avg.n_fake = fake_total;
        report.rows.push_back(std::move(avg));
    }
    return report;
}

ClassifierModel train_detector(const Manifest& manifest, const std::set<std::string>& train_sources,
                               const EvalConfig& cfg, const TrainConfig& train_cfg) {
    if (train_sources.empty()) throw Error(ErrorCode::InvalidArgument, "no training sources given");
    if (train_sources.count("real")) throw Error(ErrorCode::InvalidArgument, "real is always included; list fake sources only");
    require_sources(manifest, train_sources);
    std::set<std::string> train_set = train_sources;
    train_set.insert("real");
    const auto entries = select_entries(manifest, Split::Train, train_set, cfg);
    LabeledFeatures data;
    data.features = extract_entry_features(manifest, entries, cfg);
    for (const auto* e : entries) data.labels.push_back(e->label);
    return train(data, train_cfg);
}

GeneralizationResult run_generalization(const Manifest& manifest, const std::set<std::string>& train_sources,
                                        const EvalConfig& cfg, const TrainConfig& train_cfg,
                                        const std::set<std::string>& test_sources) {
    const std::set<std::string> tests = test_sources.empty() ? fake_sources(manifest) : test_sources;
    require_sources(manifest, tests);
    GeneralizationResult result;
    result.model = train_detector(manifest, train_sources, cfg, train_cfg);
    result.report = evaluate_model(manifest, result.model, join_sources(train_sources), tests, cfg);
    return result;
}

EvalReport run_robustness(const Manifest& manifest, const ClassifierModel& model, const std::string& train_label,
                          const std::set<std::string>& test_sources, const std::vector<PerturbationSpec>& sweep,
                          const EvalConfig& cfg) {
    require_sources(manifest, test_sources);
    const auto real_entries = select_entries(manifest, Split::Test, {"real"}, cfg);

    // Real features per sweep point are shared across test sources.
    std::vector<std::vector<std::vector<double>>> real_by_point(sweep.size() + 1);
    real_by_point[0] = extract_entry_features(manifest, real_entries, cfg);
    for (std::size_t p = 0; p < sweep.size(); ++p)
        real_by_point[p + 1] = extract_entry_features(manifest, real_entries, cfg, sweep[p]);

    EvalReport report;
    for (const auto& source : test_sources) {
        const auto fake_entries = select_entries(manifest, Split::Test, {source}, cfg);
        for (std::size_t p = 0; p <= sweep.size(); ++p) {
            std::optional<PerturbationSpec> spec;
            if (p > 0) spec = sweep[p - 1];
            const auto fake = extract_entry_features(manifest, fake_entries, cfg, spec);
            ReportRow row = score_row(model, real_by_point[p], fake);
            row.train_sources = train_label;
            row.test_source = source;
            if (spec) {
                row.perturbation = std::string(to_string(spec->kind));
                row.param = spec->param;
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace freqspec
