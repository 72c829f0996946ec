// freqspec: spectral fingerprint extraction, perturbation sweeps and detector
// benchmarking from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <freqspec/bench.hpp>
#include <freqspec/error.hpp>
#include <freqspec/parallel.hpp>
#include <freqspec/perturb.hpp>
#include <freqspec/rng.hpp>
#include <freqspec/spectrum.hpp>
#include <freqspec/synth.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace freqspec;

namespace {

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

// Thrown for bad flag combinations discovered after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global flags. Optional values distinguish "given on the command line" from defaults.
struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string config_path;
    int resolution = 0, median_k = 0, bands = 0, sample_cap = -1;
    double epsilon = 0.0;
    std::string features;
    CLI::App* app = nullptr;
    bool given(const char* name) const { return app->count(name) > 0; }
};

// Precedence: flags > config file > defaults.
EvalConfig resolve_eval_config(const Globals& g) {
    EvalConfig cfg;
    if (!g.config_path.empty()) {
        ordered_json j;
        try {
            const auto bytes = read_file(g.config_path);
            j = ordered_json::parse(bytes.begin(), bytes.end());
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config file is not valid JSON: " + std::string(e.what()));
        }
        if (!j.is_object()) throw UsageError("config file must hold a JSON object");
        try {
            for (const auto& [key, value] : j.items()) {
                if (key == "resolution") cfg.resolution = value.get<int>();
                else if (key == "median_k") cfg.median_k = value.get<int>();
                else if (key == "epsilon") cfg.epsilon = value.get<double>();
                else if (key == "bands") cfg.bands = value.get<int>();
                else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
                else if (key == "sample_cap") cfg.sample_cap = value.get<int>();
                else if (key == "threads") cfg.threads = value.get<unsigned>();
                else if (key == "features") cfg.features = parse_feature_set(value.get<std::string>());
                else throw UsageError("unknown config key: " + key);
            }
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config file: " + std::string(e.what()));
        } catch (const Error& e) {
            throw UsageError("config file: " + std::string(e.what()));
        }
    }
    if (g.given("--seed")) cfg.seed = g.seed;
    if (g.given("--threads")) cfg.threads = g.threads;
    if (g.given("--resolution")) cfg.resolution = g.resolution;
    if (g.given("--median-k")) cfg.median_k = g.median_k;
    if (g.given("--epsilon")) cfg.epsilon = g.epsilon;
    if (g.given("--bands")) cfg.bands = g.bands;
    if (g.given("--sample-cap")) cfg.sample_cap = g.sample_cap;
    if (g.given("--features")) cfg.features = parse_feature_set(g.features);

    if (cfg.resolution <= 0) throw UsageError("resolution must be positive");
    if (cfg.median_k < 3 || cfg.median_k % 2 == 0) throw UsageError("median-k must be odd and >= 3");
    if (!(cfg.epsilon > 0.0)) throw UsageError("epsilon must be positive");
    if (cfg.bands < 1) throw UsageError("bands must be positive");
    if (cfg.sample_cap < 0) throw UsageError("sample-cap must be >= 0");
    if (cfg.threads < 1) throw UsageError("threads must be >= 1");
    return cfg;
}

ordered_json eval_config_json(const EvalConfig& c) {
    return {{"resolution", c.resolution}, {"median_k", c.median_k}, {"epsilon", c.epsilon},
            {"bands", c.bands},           {"seed", c.seed},         {"sample_cap", c.sample_cap},
            {"threads", c.threads},       {"features", to_string(c.features)}};
}

void print_config(const std::string& subcommand, ordered_json extra, const EvalConfig& cfg) {
    ordered_json j;
    j["subcommand"] = subcommand;
    j["eval"] = eval_config_json(cfg);
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::cout << "config " << j.dump() << std::endl;
}

bool is_image(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// Images directly inside `dir`, sorted by file name.
std::vector<fs::path> list_images(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::IoFailure, "not a directory: " + dir.string());
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && is_image(e.path())) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::string> parse_list(const std::string& csv) {
    std::set<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(item);
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

ReportFormat format_for(const fs::path& p) { return p.extension() == ".json" ? ReportFormat::Json : ReportFormat::Csv; }

std::set<std::string> fake_sources_of(const Manifest& m) {
    std::set<std::string> out;
    for (const auto& s : m.sources())
        if (s != "real") out.insert(s);
    return out;
}

std::string print_table(const EvalReport& r) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof(line), "%-28s %-14s %-8s %6s %8s %8s %7s %7s\n", "train_sources", "test_source",
                  "perturb", "param", "auc", "ap", "n_real", "n_fake");
    os << line;
    for (const auto& row : r.rows) {
        std::snprintf(line, sizeof(line), "%-28s %-14s %-8s %6g %8.4f %8.4f %7zu %7zu\n", row.train_sources.c_str(),
                      row.test_source.c_str(), row.perturbation.c_str(), row.param, row.auc, row.ap, row.n_real,
                      row.n_fake);
        os << line;
    }
    return os.str();
}

struct TrainFlags {
    std::string kind = "linear";
    int hidden = 16;
    double lr = 0.05;
    int epochs = 500;
    double l2 = 1e-4;

    void add(CLI::App* sub) {
        sub->add_option("--model-kind", kind, "Classifier kind")->check(CLI::IsMember({"linear", "mlp1"}))->capture_default_str();
        sub->add_option("--hidden", hidden, "Hidden units (mlp1)")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--lr", lr, "Learning rate")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--epochs", epochs, "Full-batch gradient steps")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--l2", l2, "Ridge coefficient")->check(CLI::NonNegativeNumber)->capture_default_str();
    }
    TrainConfig resolve(std::uint64_t seed) const {
        TrainConfig t;
        t.kind = parse_model_kind(kind);
        t.hidden = hidden;
        t.learning_rate = lr;
        t.epochs = epochs;
        t.l2 = l2;
        t.seed = seed;
        return t;
    }
    static ordered_json json(const TrainConfig& t) {
        return {{"model_kind", to_string(t.kind)}, {"hidden", t.hidden}, {"lr", t.learning_rate},
                {"epochs", t.epochs},              {"l2", t.l2},         {"seed", t.seed}};
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain synthetic image forensics: spectra, perturbations, detectors, benchmarks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Globals g;
    g.app = &app;
    app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (outputs do not depend on it)")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--config", g.config_path, "JSON file with evaluation settings (flags take precedence)")->check(CLI::ExistingFile);
    app.add_option("--resolution", g.resolution, "Working resolution; larger images are downscaled (default 256)");
    app.add_option("--median-k", g.median_k, "Median window for the high-pass residual (default 3)");
    app.add_option("--epsilon", g.epsilon, "Log offset (default 1e-8)");
    app.add_option("--bands", g.bands, "Radial bands (default 32)");
    app.add_option("--sample-cap", g.sample_cap, "Images per source and split, 0 = all (default 0)");
    app.add_option("--features", g.features, "Feature set (default freq)")->check(CLI::IsMember({"freq", "pixel"}));

    // synth
    auto* synth = app.add_subcommand("synth", "Write a synthetic corpus (real/ plus one directory per fake kind) and a manifest");
    std::string synth_out, synth_kinds = "hf_noise,grid,lowfreq_axis,upsampled";
    int n_real = 500, n_fake = 500, synth_size = 128;
    double alpha = 2.0, alpha_jitter = 0.25;
    std::optional<double> strength;
    std::vector<double> split_ratios = {0.95, 0.025, 0.025};
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--n-real", n_real, "Natural images")->check(CLI::NonNegativeNumber)->capture_default_str();
    synth->add_option("--n-fake", n_fake, "Images per fake kind")->check(CLI::NonNegativeNumber)->capture_default_str();
    synth->add_option("--size", synth_size, "Image side (power of two)")->capture_default_str();
    synth->add_option("--alpha", alpha, "Power-law exponent")->capture_default_str();
    synth->add_option("--alpha-jitter", alpha_jitter, "Per-image exponent jitter (uniform +/-)")->capture_default_str();
    synth->add_option("--kinds", synth_kinds, "Comma-separated fake kinds")->capture_default_str();
    synth->add_option("--strength", strength, "Artifact strength for hf_noise, grid and lowfreq_axis (default 20)");
    synth->add_option("--split", split_ratios, "train val test ratios for the manifest")->expected(3)->capture_default_str();

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Log-magnitude residual spectrum of one image");
    std::string spec_in, spec_out, spec_features;
    spectrum->add_option("--in", spec_in, "Input image")->required()->check(CLI::ExistingFile);
    spectrum->add_option("--out", spec_out, "Spectrum image (.png or .pgm)")->required();
    spectrum->add_option("--features-out", spec_features, "Optional JSON file with the feature vector");

    // mean-spectrum
    auto* mean = app.add_subcommand("mean-spectrum", "Average log spectrum over a seeded sample of a directory");
    std::string mean_in, mean_out;
    std::size_t mean_n = 1000;
    mean->add_option("--in,--in-dir", mean_in, "Directory of images")->required()->check(CLI::ExistingDirectory);
    mean->add_option("--n", mean_n, "Images to sample")->check(CLI::PositiveNumber)->capture_default_str();
    mean->add_option("--out", mean_out, "Spectrum image (.png or .pgm)")->required();

    // perturb
    auto* perturb = app.add_subcommand(
        "perturb", "Apply one perturbation to an image or directory; without --param sweep the kind's grid");
    std::string pert_kind = "all", pert_in, pert_out;
    std::optional<double> pert_param;
    perturb->add_option("--kind", pert_kind, "jpeg, blur, noise, resize or all (sweep only)")
        ->check(CLI::IsMember({"jpeg", "blur", "noise", "resize", "all"}))
        ->capture_default_str();
    perturb->add_option("--param", pert_param, "Intensity: JPEG quality, kernel size, noise std or resize factor");
    perturb->add_option("--in,--in-dir", pert_in, "Input image or directory")->required()->check(CLI::ExistingPath);
    perturb->add_option("--out,--out-dir", pert_out, "Output image or directory")->required();

    // train
    auto* trn = app.add_subcommand("train", "Train a detector on the train split of a manifest");
    std::string trn_manifest, trn_out, trn_sources = "hf_noise,lowfreq_axis";
    TrainFlags trn_flags;
    trn->add_option("--manifest", trn_manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
    trn->add_option("--train-sources", trn_sources, "Comma-separated fake sources")->capture_default_str();
    trn->add_option("--out", trn_out, "Model file")->required();
    trn_flags.add(trn);

    // eval
    auto* ev = app.add_subcommand("eval", "Score the test split per source; trains first when --model is absent");
    std::string ev_manifest, ev_model, ev_out, ev_model_out, ev_test, ev_train = "hf_noise,lowfreq_axis", ev_label;
    TrainFlags ev_flags;
    ev->add_option("--manifest", ev_manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
    ev->add_option("--model", ev_model, "Existing model file")->check(CLI::ExistingFile);
    ev->add_option("--train-sources", ev_train, "Fake sources to train on when no model is given")->capture_default_str();
    ev->add_option("--model-out", ev_model_out, "Where to save the model trained by this run");
    ev->add_option("--test-sources", ev_test, "Comma-separated fake sources (default: all)");
    ev->add_option("--train-label", ev_label, "train_sources column (default: training sources or model file stem)");
    ev->add_option("--out", ev_out, "Report (.csv or .json)")->required();
    ev_flags.add(ev);

    // robustness
    auto* rob = app.add_subcommand("robustness", "Perturbation sweep over the test split");
    std::string rob_manifest, rob_model, rob_out, rob_test, rob_kinds = "jpeg,blur,noise,resize", rob_label;
    rob->add_option("--manifest", rob_manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
    rob->add_option("--model", rob_model, "Model file")->required()->check(CLI::ExistingFile);
    rob->add_option("--test-sources", rob_test, "Comma-separated fake sources (default: all)");
    rob->add_option("--kinds", rob_kinds, "Perturbation kinds to sweep")->capture_default_str();
    rob->add_option("--train-label", rob_label, "train_sources column (default: model file stem)");
    rob->add_option("--out", rob_out, "Report (.csv or .json)")->required();

    // report
    auto* rep = app.add_subcommand("report", "Print reports as a table; optionally merge and convert");
    std::vector<std::string> rep_in;
    std::string rep_out;
    rep->add_option("--in", rep_in, "Report files (.csv or .json)")->required()->check(CLI::ExistingFile);
    rep->add_option("--out", rep_out, "Merged report (.csv or .json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        const EvalConfig cfg = resolve_eval_config(g);

        if (*synth) {
            CorpusConfig cc;
            cc.n_real = n_real;
            cc.n_fake = n_fake;
            cc.size = synth_size;
            cc.alpha = alpha;
            cc.alpha_jitter = alpha_jitter;
            cc.seed = cfg.seed;
            cc.kinds.clear();
            for (const auto& k : parse_list(synth_kinds)) {
                try {
                    cc.kinds.push_back(parse_synth_kind(k));
                } catch (const Error&) {
                    throw UsageError("unknown synth kind: " + k);
                }
            }
            // Keep the canonical kind order regardless of how the list was written.
            std::sort(cc.kinds.begin(), cc.kinds.end());
            if (strength)
                for (auto k : {SynthKind::HfNoise, SynthKind::Grid, SynthKind::LowfreqAxis}) cc.strength[k] = *strength;
            validate(SynthSpec{SynthKind::Natural, cc.size, cc.alpha, 0.0, 0});
            if (cc.n_real < 1) throw UsageError("n-real must be >= 1");
            ordered_json extra;
            extra["out"] = synth_out;
            extra["n_real"] = cc.n_real;
            extra["n_fake"] = cc.n_fake;
            extra["size"] = cc.size;
            extra["alpha"] = cc.alpha;
            extra["alpha_jitter"] = cc.alpha_jitter;
            ordered_json kinds = ordered_json::array(), strengths = ordered_json::object();
            for (auto k : cc.kinds) {
                kinds.push_back(std::string(to_string(k)));
                strengths[std::string(to_string(k))] = cc.strength[k];
            }
            extra["kinds"] = kinds;
            extra["strength"] = strengths;
            extra["split"] = split_ratios;
            print_config("synth", extra, cfg);

            write_corpus(cc, synth_out, cfg.threads);
            const Manifest m = build_manifest(synth_out, {split_ratios[0], split_ratios[1], split_ratios[2]}, cfg.resolution);
            save_manifest(m, fs::path(synth_out) / "manifest.json");
            std::cout << "wrote " << m.entries.size() << " images and " << (fs::path(synth_out) / "manifest.json").string() << "\n";
        } else if (*spectrum) {
            print_config("spectrum", {{"in", spec_in}, {"out", spec_out}, {"features_out", spec_features}}, cfg);
            const Spectrum s = image_log_spectrum(load_image(spec_in), cfg.median_k, cfg.epsilon);
            if (fs::path(spec_out).has_parent_path()) fs::create_directories(fs::path(spec_out).parent_path());
            export_spectrum_image(s, spec_out);
            if (!spec_features.empty()) {
                const FeatureVector f = extract_features(s, cfg.bands);
                ordered_json j = {{"radial", f.radial}, {"directional", f.directional}, {"axis", f.axis}, {"nyquist", f.nyquist}};
                write_text(spec_features, j.dump(2) + "\n");
            }
        } else if (*mean) {
            auto files = list_images(mean_in);
            if (files.empty()) throw Error(ErrorCode::EmptySet, "no images in " + mean_in);
            const std::size_t available = files.size();
            if (files.size() > mean_n) {
                std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
                    const auto ka = rng::mix(cfg.seed, rng::fnv1a(a.filename().string()));
                    const auto kb = rng::mix(cfg.seed, rng::fnv1a(b.filename().string()));
                    return ka != kb ? ka < kb : a < b;
                });
                files.resize(mean_n);
                std::sort(files.begin(), files.end());
            }
            print_config("mean-spectrum",
                         {{"in", mean_in}, {"n", mean_n}, {"available", available}, {"used", files.size()}, {"out", mean_out}},
                         cfg);
            const Spectrum s = mean_spectrum(
                files.size(),
                [&](std::size_t i) {
                    Raster img = load_image(files[i]);
                    if (img.width() > cfg.resolution || img.height() > cfg.resolution)
                        img = resize(img, cfg.resolution, cfg.resolution, Interpolation::Bilinear);
                    return img;
                },
                cfg.median_k, cfg.epsilon, cfg.threads);
            if (fs::path(mean_out).has_parent_path()) fs::create_directories(fs::path(mean_out).parent_path());
            export_spectrum_image(s, mean_out);
        } else if (*perturb) {
            std::vector<PerturbationSpec> specs;
            if (pert_param) {
                if (pert_kind == "all") throw UsageError("--param needs a specific --kind");
                specs.push_back(PerturbationSpec::unchecked(parse_perturb_kind(pert_kind), *pert_param, cfg.seed));
            } else if (pert_kind == "all") {
                specs = full_sweep(cfg.seed);
            } else {
                const auto kind = parse_perturb_kind(pert_kind);
                for (double p : perturbation_grid(kind)) specs.push_back(PerturbationSpec::from_grid(kind, p, cfg.seed));
            }
            const bool sweep = !pert_param;
            const bool dir_mode = fs::is_directory(pert_in);
            if (!dir_mode && sweep) throw UsageError("sweep mode needs --in to be a directory");
            ordered_json labels = ordered_json::array();
            for (const auto& s : specs) labels.push_back(s.label());
            print_config("perturb", {{"in", pert_in}, {"out", pert_out}, {"seed", cfg.seed}, {"points", labels}}, cfg);

            // Noise streams are keyed by file name so results do not depend on order or threads.
            auto run = [&](const PerturbationSpec& base, const fs::path& in, const fs::path& out) {
                PerturbationSpec spec = base;
                spec.seed = rng::mix(base.seed, rng::fnv1a(in.filename().string()));
                if (out.has_parent_path()) fs::create_directories(out.parent_path());
                save_image(apply(spec, load_image(in)), out);
            };
            if (!dir_mode) {
                run(specs.front(), pert_in, pert_out);
            } else {
                const auto files = list_images(pert_in);
                std::set<std::string> stems;
                for (const auto& f : files)
                    if (!stems.insert(f.stem().string()).second)
                        throw Error(ErrorCode::InvalidArgument, "two inputs share the stem " + f.stem().string());
                for (const auto& spec : specs) {
                    const fs::path dir = sweep ? fs::path(pert_out) / spec.label() : fs::path(pert_out);
                    fs::create_directories(dir);
                    parallel_for(files.size(), cfg.threads, [&](std::size_t i) {
                        run(spec, files[i], dir / (files[i].stem().string() + ".png"));
                    });
                }
            }
        } else if (*trn) {
            const TrainConfig tc = trn_flags.resolve(cfg.seed);
            const auto sources = parse_list(trn_sources);
            print_config("train", {{"manifest", trn_manifest}, {"train_sources", join_sources(sources)}, {"out", trn_out},
                                   {"train", TrainFlags::json(tc)}},
                         cfg);
            const Manifest m = load_manifest(trn_manifest);
            const ClassifierModel model = train_detector(m, sources, cfg, tc);
            if (fs::path(trn_out).has_parent_path()) fs::create_directories(fs::path(trn_out).parent_path());
            save_model(model, trn_out);
        } else if (*ev) {
            const TrainConfig tc = ev_flags.resolve(cfg.seed);
            const Manifest m = load_manifest(ev_manifest);
            const std::set<std::string> tests = ev_test.empty() ? fake_sources_of(m) : parse_list(ev_test);
            const auto train_sources = parse_list(ev_train);
            std::string label = ev_label;
            if (label.empty()) label = ev_model.empty() ? join_sources(train_sources) : fs::path(ev_model).stem().string();
            ordered_json extra = {{"manifest", ev_manifest}, {"test_sources", join_sources(tests)}, {"train_label", label},
                                  {"out", ev_out}};
            if (ev_model.empty()) {
                extra["train_sources"] = join_sources(train_sources);
                extra["train"] = TrainFlags::json(tc);
                extra["model_out"] = ev_model_out;
            } else {
                extra["model"] = ev_model;
            }
            print_config("eval", extra, cfg);
            ClassifierModel model;
            if (ev_model.empty()) {
                model = train_detector(m, train_sources, cfg, tc);
                if (!ev_model_out.empty()) {
                    if (fs::path(ev_model_out).has_parent_path()) fs::create_directories(fs::path(ev_model_out).parent_path());
                    save_model(model, ev_model_out);
                }
            } else {
                model = load_model(ev_model);
            }
            const EvalReport r = evaluate_model(m, model, label, tests, cfg);
            if (fs::path(ev_out).has_parent_path()) fs::create_directories(fs::path(ev_out).parent_path());
            write_report(r, ev_out, format_for(ev_out));
            std::cout << print_table(r);
        } else if (*rob) {
            const Manifest m = load_manifest(rob_manifest);
            const std::set<std::string> tests = rob_test.empty() ? fake_sources_of(m) : parse_list(rob_test);
            const std::string label = rob_label.empty() ? fs::path(rob_model).stem().string() : rob_label;
            std::set<PerturbKind> kinds;
            for (const auto& k : parse_list(rob_kinds)) {
                try {
                    kinds.insert(parse_perturb_kind(k));
                } catch (const Error&) {
                    throw UsageError("unknown perturbation kind: " + k);
                }
            }
            std::vector<PerturbationSpec> sweep;
            for (const auto& s : full_sweep(cfg.seed))
                if (kinds.count(s.kind)) sweep.push_back(s);
            print_config("robustness", {{"manifest", rob_manifest}, {"model", rob_model}, {"test_sources", join_sources(tests)},
                                        {"train_label", label}, {"points", sweep.size()}, {"out", rob_out}},
                         cfg);
            const EvalReport r = run_robustness(m, load_model(rob_model), label, tests, sweep, cfg);
            if (fs::path(rob_out).has_parent_path()) fs::create_directories(fs::path(rob_out).parent_path());
            write_report(r, rob_out, format_for(rob_out));
            std::cout << print_table(r);
        } else if (*rep) {
            print_config("report", {{"in", rep_in}, {"out", rep_out}}, cfg);
            EvalReport merged;
            for (const auto& path : rep_in) {
                const EvalReport r = read_report(path);
                merged.rows.insert(merged.rows.end(), r.rows.begin(), r.rows.end());
            }
            std::cout << print_table(merged);
            if (!rep_out.empty()) {
                if (fs::path(rep_out).has_parent_path()) fs::create_directories(fs::path(rep_out).parent_path());
                write_report(merged, rep_out, format_for(rep_out));
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return kRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return 0;
}
