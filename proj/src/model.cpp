#include <freqspec/model.hpp>

#include <freqspec/error.hpp>
#include <freqspec/raster.hpp>
#include <freqspec/rng.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace freqspec {

namespace {

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

std::vector<double> standardize_row(const ClassifierModel& m, std::span<const double> f) {
    std::vector<double> x(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) x[i] = (f[i] - m.feature_mean[i]) / m.feature_std[i];
    return x;
}

// Logit for a standardized row; optionally exposes hidden activations.
double forward(ModelKind kind, int dim, int hidden, std::span<const double> p, std::span<const double> x,
               std::vector<double>* h) {
    if (kind == ModelKind::Linear) {
        double z = p[dim];
        for (int i = 0; i < dim; ++i) z += p[i] * x[i];
        return z;
    }
    const std::size_t b1 = static_cast<std::size_t>(hidden) * dim;
    const std::size_t w2 = b1 + hidden;
    const std::size_t b2 = w2 + hidden;
    double z = p[b2];
    for (int j = 0; j < hidden; ++j) {
        double a = p[b1 + j];
        const double* row = p.data() + static_cast<std::size_t>(j) * dim;
        for (int i = 0; i < dim; ++i) a += row[i] * x[i];
        const double hj = std::tanh(a);
        if (h) (*h)[j] = hj;
        z += p[w2 + j] * hj;
    }
    return z;
}

}  // namespace

std::string to_string(ModelKind kind) { return kind == ModelKind::Linear ? "linear" : "mlp1"; }

ModelKind parse_model_kind(const std::string& name) {
    if (name == "linear") return ModelKind::Linear;
    if (name == "mlp1") return ModelKind::Mlp1;
    throw Error(ErrorCode::InvalidArgument, "unknown model kind: " + name);
}

std::size_t ClassifierModel::param_count(ModelKind kind, int dim, int hidden) {
    if (kind == ModelKind::Linear) return static_cast<std::size_t>(dim) + 1;
    return static_cast<std::size_t>(hidden) * dim + 2 * static_cast<std::size_t>(hidden) + 1;
}

double loss_and_gradient(ModelKind kind, int dim, int hidden, std::span<const double> params,
                         const std::vector<std::vector<double>>& x, std::span<const int> labels, double l2,
                         std::vector<double>* gradient) {
    const std::size_t np = ClassifierModel::param_count(kind, dim, hidden);
    if (params.size() != np) throw Error(ErrorCode::DimensionMismatch, "parameter vector has the wrong length");
    if (gradient) gradient->assign(np, 0.0);
    const double inv_n = 1.0 / static_cast<double>(x.size());
    std::vector<double> h(static_cast<std::size_t>(std::max(hidden, 0)));

    double loss = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) {
        const double z = forward(kind, dim, hidden, params, x[s], &h);
        const double y = labels[s];
        loss += softplus(z) - y * z;
        if (!gradient) continue;
        const double dz = (sigmoid(z) - y) * inv_n;
        auto& g = *gradient;
        if (kind == ModelKind::Linear) {
            for (int i = 0; i < dim; ++i) g[i] += dz * x[s][i];
            g[dim] += dz;
        } else {
            const std::size_t b1 = static_cast<std::size_t>(hidden) * dim;
            const std::size_t w2 = b1 + hidden;
            const std::size_t b2 = w2 + hidden;
            g[b2] += dz;
            for (int j = 0; j < hidden; ++j) {
                g[w2 + j] += dz * h[j];
                const double da = dz * params[w2 + j] * (1.0 - h[j] * h[j]);
                g[b1 + j] += da;
                double* row = g.data() + static_cast<std::size_t>(j) * dim;
                for (int i = 0; i < dim; ++i) row[i] += da * x[s][i];
            }
        }
    }
    loss *= inv_n;

    // Ridge on weights only.
    auto penalize = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            loss += l2 * params[i] * params[i];
            if (gradient) (*gradient)[i] += 2.0 * l2 * params[i];
        }
    };
    if (kind == ModelKind::Linear) {
        penalize(0, static_cast<std::size_t>(dim));
    } else {
        const std::size_t b1 = static_cast<std::size_t>(hidden) * dim;
        penalize(0, b1);
        penalize(b1 + hidden, b1 + 2 * static_cast<std::size_t>(hidden));
    }
    return loss;
}

TrainResult train_detailed(const LabeledFeatures& data, const TrainConfig& cfg) {
    if (!(cfg.learning_rate > 0.0) || cfg.epochs < 1 || !(cfg.l2 >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "invalid training configuration");
    if (cfg.kind == ModelKind::Mlp1 && cfg.hidden < 1) throw Error(ErrorCode::InvalidArgument, "hidden units must be >= 1");
    if (data.features.size() != data.labels.size()) throw Error(ErrorCode::ShapeMismatch, "features and labels differ in count");
    if (data.features.empty()) throw Error(ErrorCode::SingleClass, "empty training set");
    const int dim = static_cast<int>(data.features.front().size());
    for (const auto& f : data.features)
        if (static_cast<int>(f.size()) != dim) throw Error(ErrorCode::DimensionMismatch, "feature vectors differ in length");

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < data.labels.size(); ++i) (data.labels[i] == 1 ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty()) throw Error(ErrorCode::SingleClass, "training needs both classes");

    ClassifierModel m;
    m.kind = cfg.kind;
    m.dim = dim;
    m.hidden = cfg.kind == ModelKind::Mlp1 ? cfg.hidden : 0;
    m.feature_mean.assign(dim, 0.0);
    m.feature_std.assign(dim, 0.0);
    const double n = static_cast<double>(data.features.size());
    for (const auto& f : data.features)
        for (int i = 0; i < dim; ++i) m.feature_mean[i] += f[i];
    for (double& v : m.feature_mean) v /= n;
    for (const auto& f : data.features)
        for (int i = 0; i < dim; ++i) m.feature_std[i] += (f[i] - m.feature_mean[i]) * (f[i] - m.feature_mean[i]);
    for (double& v : m.feature_std) v = std::max(std::sqrt(v / n), 1e-6);

    // Balance by round-robin duplication of the minority class.
    std::vector<std::size_t> order;
    order.reserve(2 * std::max(pos.size(), neg.size()));
    for (std::size_t i = 0; i < data.labels.size(); ++i) order.push_back(i);
    const auto& minority = pos.size() < neg.size() ? pos : neg;
    const std::size_t deficit = std::max(pos.size(), neg.size()) - minority.size();
    for (std::size_t k = 0; k < deficit; ++k) order.push_back(minority[k % minority.size()]);

    std::vector<std::vector<double>> x;
    std::vector<int> y;
    x.reserve(order.size());
    y.reserve(order.size());
    for (std::size_t idx : order) {
        x.push_back(standardize_row(m, data.features[idx]));
        y.push_back(data.labels[idx]);
    }

    m.params.assign(ClassifierModel::param_count(m.kind, dim, m.hidden), 0.0);
    if (m.kind == ModelKind::Mlp1) {
        const std::uint64_t key = rng::mix(cfg.seed, 0x4D4C5031ull);
        const std::size_t nw1 = static_cast<std::size_t>(m.hidden) * dim;
        const double s1 = 1.0 / std::sqrt(static_cast<double>(dim));
        const double s2 = 1.0 / std::sqrt(static_cast<double>(m.hidden));
        for (std::size_t i = 0; i < nw1; ++i) m.params[i] = s1 * rng::normal(key, i);
        for (int j = 0; j < m.hidden; ++j) m.params[nw1 + m.hidden + j] = s2 * rng::normal(key, nw1 + j);
    }

    TrainResult result;
    result.loss_history.reserve(cfg.epochs);
    std::vector<double> grad;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double loss = loss_and_gradient(m.kind, dim, m.hidden, m.params, x, y, cfg.l2, &grad);
        if (!std::isfinite(loss)) throw Error(ErrorCode::NonFiniteLoss, "training diverged at epoch " + std::to_string(epoch));
        result.loss_history.push_back(loss);
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            m.params[i] -= cfg.learning_rate * grad[i];
            if (!std::isfinite(m.params[i]))
                throw Error(ErrorCode::NonFiniteLoss, "training diverged at epoch " + std::to_string(epoch));
        }
    }
    result.model = std::move(m);
    return result;
}

ClassifierModel train(const LabeledFeatures& data, const TrainConfig& cfg) { return train_detailed(data, cfg).model; }

double logit(const ClassifierModel& model, std::span<const double> features) {
    if (static_cast<int>(features.size()) != model.dim)
        throw Error(ErrorCode::DimensionMismatch, "feature length does not match the model");
    const auto x = standardize_row(model, features);
    return forward(model.kind, model.dim, model.hidden, model.params, x, nullptr);
}

double score(const ClassifierModel& model, std::span<const double> features) { return sigmoid(logit(model, features)); }

std::vector<double> score_batch(const ClassifierModel& model, const std::vector<std::vector<double>>& features) {
    std::vector<double> out(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) out[i] = score(model, features[i]);
    return out;
}

// ---- serialization ----

namespace {

void write_block(std::ostringstream& os, const char* name, std::span<const double> values) {
    os << name << ' ' << values.size() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%a", values[i]);
        os << buf << (i + 1 == values.size() ? '\n' : ' ');
    }
    if (values.empty()) os << '\n';
}

std::vector<double> read_block(std::istringstream& is, const std::string& name, std::size_t expected) {
    std::string got;
    std::size_t count = 0;
    if (!(is >> got >> count) || got != name || count != expected)
        throw Error(ErrorCode::SchemaMismatch, "expected block '" + name + "' of " + std::to_string(expected) + " values");
    std::vector<double> values(count);
    for (auto& v : values) {
        std::string tok;
        if (!(is >> tok)) throw Error(ErrorCode::SchemaMismatch, "block '" + name + "' is truncated");
        char* end = nullptr;
        v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') throw Error(ErrorCode::SchemaMismatch, "bad number in block '" + name + "'");
    }
    return values;
}

}  // namespace

std::string serialize_model(const ClassifierModel& m) {
    std::ostringstream os;
    os << "freqspec-model v1 " << to_string(m.kind) << ' ' << m.dim;
    if (m.kind == ModelKind::Mlp1) os << ' ' << m.hidden;
    os << '\n';
    write_block(os, "feature_mean", m.feature_mean);
    write_block(os, "feature_std", m.feature_std);
    const std::span<const double> p = m.params;
    if (m.kind == ModelKind::Linear) {
        write_block(os, "w", p.subspan(0, m.dim));
        write_block(os, "b", p.subspan(m.dim, 1));
    } else {
        const std::size_t nw1 = static_cast<std::size_t>(m.hidden) * m.dim;
        write_block(os, "w1", p.subspan(0, nw1));
        write_block(os, "b1", p.subspan(nw1, m.hidden));
        write_block(os, "w2", p.subspan(nw1 + m.hidden, m.hidden));
        write_block(os, "b2", p.subspan(nw1 + 2 * m.hidden, 1));
    }
    return os.str();
}

ClassifierModel parse_model(const std::string& text) {
    std::istringstream is(text);
    std::string magic, version, kind;
    if (!(is >> magic >> version >> kind) || magic != "freqspec-model" || version != "v1")
        throw Error(ErrorCode::SchemaMismatch, "missing freqspec-model v1 header");
    ClassifierModel m;
    if (kind == "linear") {
        m.kind = ModelKind::Linear;
    } else if (kind == "mlp1") {
        m.kind = ModelKind::Mlp1;
    } else {
        throw Error(ErrorCode::SchemaMismatch, "unknown model kind '" + kind + "'");
    }
    if (!(is >> m.dim) || m.dim < 1) throw Error(ErrorCode::SchemaMismatch, "bad dimension in header");
    if (m.kind == ModelKind::Mlp1 && (!(is >> m.hidden) || m.hidden < 1))
        throw Error(ErrorCode::SchemaMismatch, "bad hidden size in header");

    const auto d = static_cast<std::size_t>(m.dim);
    m.feature_mean = read_block(is, "feature_mean", d);
    m.feature_std = read_block(is, "feature_std", d);
    for (double s : m.feature_std)
        if (!(s > 0.0)) throw Error(ErrorCode::SchemaMismatch, "feature_std must be positive");
    auto append = [&](const std::vector<double>& v) { m.params.insert(m.params.end(), v.begin(), v.end()); };
    if (m.kind == ModelKind::Linear) {
        append(read_block(is, "w", d));
        append(read_block(is, "b", 1));
    } else {
        const auto h = static_cast<std::size_t>(m.hidden);
        append(read_block(is, "w1", h * d));
        append(read_block(is, "b1", h));
        append(read_block(is, "w2", h));
        append(read_block(is, "b2", 1));
    }
    std::string trailing;
    if (is >> trailing) throw Error(ErrorCode::SchemaMismatch, "unexpected trailing content");
    return m;
}

void save_model(const ClassifierModel& model, const std::filesystem::path& path) {
    const std::string text = serialize_model(model);
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

ClassifierModel load_model(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_model(std::string(bytes.begin(), bytes.end()));
}

}  // namespace freqspec
