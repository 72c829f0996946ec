#include <freqspec/error.hpp>
#include <freqspec/metrics.hpp>
#include <freqspec/model.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

namespace freqspec {
namespace {

LabeledFeatures gaussian_blobs(int n_real, int n_fake, int dim, double shift, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    LabeledFeatures d;
    for (int i = 0; i < n_real + n_fake; ++i) {
        const int label = i < n_real ? 0 : 1;
        std::vector<double> f(dim);
        for (int k = 0; k < dim; ++k) f[k] = 10.0 * k + g(rng) + (label ? shift : 0.0) * (k % 2 ? -1 : 1);
        d.features.push_back(std::move(f));
        d.labels.push_back(label);
    }
    return d;
}

double train_auc(const ClassifierModel& m, const LabeledFeatures& d) {
    std::vector<ScoredSample> s;
    for (std::size_t i = 0; i < d.features.size(); ++i) s.push_back({d.labels[i], score(m, d.features[i])});
    return auc(s);
}

// Norm-wise relative error between analytic and central-difference gradients.
double gradient_error(ModelKind kind, int dim, int hidden, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<std::vector<double>> x(24, std::vector<double>(dim));
    std::vector<int> y(24);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (double& v : x[i]) v = g(rng);
        y[i] = static_cast<int>(i % 2);
    }
    std::vector<double> p(ClassifierModel::param_count(kind, dim, hidden));
    for (double& v : p) v = 0.5 * g(rng);
    std::vector<double> grad;
    loss_and_gradient(kind, dim, hidden, p, x, y, 0.01, &grad);
    const double h = 1e-5;
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto q = p;
        q[i] = p[i] + h;
        const double up = loss_and_gradient(kind, dim, hidden, q, x, y, 0.01, nullptr);
        q[i] = p[i] - h;
        const double down = loss_and_gradient(kind, dim, hidden, q, x, y, 0.01, nullptr);
        const double numeric = (up - down) / (2 * h);
        diff += (numeric - grad[i]) * (numeric - grad[i]);
        norm += grad[i] * grad[i];
    }
    return std::sqrt(diff / norm);
}

TEST(Model, GradientMatchesFiniteDifferences) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_LE(gradient_error(ModelKind::Linear, 6, 0, seed), 1e-5);
        EXPECT_LE(gradient_error(ModelKind::Mlp1, 5, 4, seed), 1e-5);
    }
}

TEST(Model, SeparableToySetReachesPerfectAuc) {
    const auto d = gaussian_blobs(30, 30, 2, 8.0, 1);
    for (ModelKind k : {ModelKind::Linear, ModelKind::Mlp1}) {
        TrainConfig cfg;
        cfg.kind = k;
        cfg.hidden = 4;
        EXPECT_EQ(train_auc(train(d, cfg), d), 1.0);
    }
}

TEST(Model, HeavyRidgeDrivesScoresToHalf) {
    // Weights shrink like 1/l2 and scores approach 0.5 in the limit.
    const auto d = gaussian_blobs(20, 20, 3, 2.0, 2);
    double prev_w = 1e300, prev_dev = 1e300;
    for (double l2 : {1e2, 1e3, 1e4}) {
        TrainConfig cfg;
        cfg.l2 = l2;
        cfg.learning_rate = 0.4 / l2;
        cfg.epochs = 200;
        const ClassifierModel m = train(d, cfg);
        double w = 0.0, dev = 0.0;
        for (int i = 0; i < 3; ++i) w = std::max(w, std::abs(m.params[i]));
        for (const auto& f : d.features) dev = std::max(dev, std::abs(score(m, f) - 0.5));
        EXPECT_LT(w, 0.5 / l2);
        EXPECT_LT(w, prev_w / 5.0);
        EXPECT_LT(dev, prev_dev / 5.0);
        prev_w = w;
        prev_dev = dev;
    }
    EXPECT_LT(prev_dev, 1e-3);
}

TEST(Model, ZeroWeightScores) {
    ClassifierModel m;
    m.dim = 3;
    m.feature_mean = {1, 2, 3};
    m.feature_std = {1, 1, 1};
    m.params = {0, 0, 0, 0};
    EXPECT_EQ(score(m, std::vector<double>{9, -4, 7}), 0.5);
    m.params[3] = 0.7;
    EXPECT_DOUBLE_EQ(score(m, m.feature_mean), 1.0 / (1.0 + std::exp(-0.7)));
    try {
        score(m, std::vector<double>{1, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Model, BatchEqualsLoop) {
    const auto d = gaussian_blobs(15, 25, 4, 1.0, 3);
    TrainConfig cfg;
    cfg.kind = ModelKind::Mlp1;
    cfg.hidden = 3;
    cfg.epochs = 50;
    const ClassifierModel m = train(d, cfg);
    const auto batch = score_batch(m, d.features);
    for (std::size_t i = 0; i < batch.size(); ++i) EXPECT_EQ(batch[i], score(m, d.features[i]));
}

TEST(Model, BitwiseReproducible) {
    const auto d = gaussian_blobs(15, 25, 4, 1.0, 4);
    for (ModelKind k : {ModelKind::Linear, ModelKind::Mlp1}) {
        TrainConfig cfg;
        cfg.kind = k;
        cfg.hidden = 5;
        cfg.epochs = 100;
        cfg.seed = 11;
        const ClassifierModel a = train(d, cfg), b = train(d, cfg);
        EXPECT_EQ(a.params, b.params);
        EXPECT_EQ(a.feature_mean, b.feature_mean);
        EXPECT_EQ(a.feature_std, b.feature_std);
    }
}

TEST(Model, LossNonIncreasingAtSmallRate) {
    const auto d = gaussian_blobs(20, 35, 5, 1.0, 5);
    for (ModelKind k : {ModelKind::Linear, ModelKind::Mlp1}) {
        TrainConfig cfg;
        cfg.kind = k;
        cfg.learning_rate = 1e-3;
        cfg.epochs = 300;
        const auto hist = train_detailed(d, cfg).loss_history;
        ASSERT_EQ(hist.size(), 300u);
        for (std::size_t i = 1; i < hist.size(); ++i) EXPECT_LE(hist[i], hist[i - 1] + 1e-9);
    }
}

TEST(Model, BalancingAndStandardization) {
    // Standardization constants come from the original (unduplicated) samples.
    LabeledFeatures d;
    d.features = {{0.0}, {2.0}, {4.0}, {10.0}};
    d.labels = {0, 0, 0, 1};
    TrainConfig cfg;
    cfg.epochs = 1;
    const ClassifierModel m = train(d, cfg);
    EXPECT_DOUBLE_EQ(m.feature_mean[0], 4.0);
    EXPECT_DOUBLE_EQ(m.feature_std[0], std::sqrt((16.0 + 4.0 + 0.0 + 36.0) / 4.0));
    // After balancing the set is symmetric in class counts, so the first bias step is zero.
    EXPECT_NEAR(m.params[1], 0.0, 1e-15);
}

TEST(Model, ConstantFeatureStdIsFloored) {
    LabeledFeatures d;
    d.features = {{1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}, {4.0, 5.0}};
    d.labels = {0, 0, 1, 1};
    const ClassifierModel m = train(d, TrainConfig{});
    EXPECT_EQ(m.feature_std[1], 1e-6);
}

TEST(Model, AffineRescalingInvariance) {
    const auto d = gaussian_blobs(20, 20, 3, 1.5, 6);
    auto scaled = d;
    const double a[3] = {3.0, 0.01, 250.0}, b[3] = {-7.0, 1.0, 1e3};
    for (auto& f : scaled.features)
        for (int k = 0; k < 3; ++k) f[k] = a[k] * f[k] + b[k];
    const ClassifierModel m1 = train(d, TrainConfig{}), m2 = train(scaled, TrainConfig{});
    for (std::size_t i = 0; i < d.features.size(); ++i)
        EXPECT_NEAR(score(m1, d.features[i]), score(m2, scaled.features[i]), 1e-9);
}

TEST(Model, Errors) {
    LabeledFeatures one;
    one.features = {{1.0}, {2.0}};
    one.labels = {1, 1};
    try {
        train(one, TrainConfig{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingleClass);
    }
    const auto d = gaussian_blobs(10, 10, 3, 1.0, 7);
    TrainConfig wild;
    wild.kind = ModelKind::Mlp1;
    wild.learning_rate = 1e300;
    try {
        train(d, wild);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFiniteLoss);
    }
    TrainConfig bad;
    bad.epochs = 0;
    EXPECT_THROW(train(d, bad), Error);
}

TEST(Serialization, RoundTripIsBitExact) {
    const auto d = gaussian_blobs(20, 20, 6, 1.0, 8);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 20.0);
    for (ModelKind k : {ModelKind::Linear, ModelKind::Mlp1}) {
        TrainConfig cfg;
        cfg.kind = k;
        cfg.hidden = 7;
        cfg.epochs = 60;
        const ClassifierModel m = train(d, cfg);
        const auto path = std::filesystem::temp_directory_path() / "freqspec_model_test.txt";
        save_model(m, path);
        const ClassifierModel back = load_model(path);
        std::filesystem::remove(path);
        EXPECT_EQ(back.params, m.params);
        EXPECT_EQ(serialize_model(back), serialize_model(m));
        for (int t = 0; t < 100; ++t) {
            std::vector<double> f(6);
            for (double& v : f) v = g(rng);
            EXPECT_EQ(score(back, f), score(m, f));
        }
    }
}

TEST(Serialization, SchemaErrors) {
    const auto d = gaussian_blobs(5, 5, 2, 1.0, 10);
    TrainConfig cfg;
    cfg.epochs = 5;
    const std::string text = serialize_model(train(d, cfg));
    auto expect_schema = [](const std::string& t) {
        try {
            parse_model(t);
            FAIL() << t;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::SchemaMismatch);
        }
    };
    expect_schema("");
    expect_schema("freqspec-model v2 linear 2\n");
    std::string wrong_dim = text;
    wrong_dim.replace(wrong_dim.find("linear 2"), 8, "linear 3");
    expect_schema(wrong_dim);
    expect_schema(text.substr(0, text.rfind('\n', text.size() - 2) + 1));  // drop the bias value
    expect_schema(text + "extra\n");
    EXPECT_NO_THROW(parse_model(text));
    try {
        load_model("/nonexistent/freqspec/model.txt");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoFailure);
    }
}

}  // namespace
}  // namespace freqspec
