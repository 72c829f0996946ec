#include <freqspec/bench.hpp>

#include <freqspec/error.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace freqspec {

namespace {

constexpr const char* kCsvHeader = "train_sources,test_source,perturbation,param,auc,ap,n_real,n_fake";

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_param(double p) {
    char buf[64];
    if (std::round(p) == p && std::abs(p) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(p));
    } else {
        std::snprintf(buf, sizeof(buf), "%.4f", p);
    }
    return buf;
}

std::string format_fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

double parse_number(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorCode::SchemaMismatch, "not a number: '" + s + "'");
    }
    if (pos != s.size()) throw Error(ErrorCode::SchemaMismatch, "not a number: '" + s + "'");
    return v;
}

}  // namespace

std::string report_to_csv(const EvalReport& report) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : report.rows) {
        out += csv_field(r.train_sources) + ',' + csv_field(r.test_source) + ',' + csv_field(r.perturbation) + ',' +
               format_param(r.param) + ',' + format_fixed4(r.auc) + ',' + format_fixed4(r.ap) + ',' +
               std::to_string(r.n_real) + ',' + std::to_string(r.n_fake) + '\n';
    }
    return out;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows)
        j["rows"].push_back({{"train_sources", r.train_sources},
                             {"test_source", r.test_source},
                             {"perturbation", r.perturbation},
                             {"param", r.param},
                             {"auc", r.auc},
                             {"ap", r.ap},
                             {"n_real", r.n_real},
                             {"n_fake", r.n_fake}});
    return j.dump(2) + "\n";
}

EvalReport report_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw Error(ErrorCode::SchemaMismatch, "unexpected CSV header");
    EvalReport report;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) throw Error(ErrorCode::SchemaMismatch, "CSV row needs 8 columns");
        ReportRow r;
        r.train_sources = f[0];
        r.test_source = f[1];
        r.perturbation = f[2];
        r.param = parse_number(f[3]);
        r.auc = parse_number(f[4]);
        r.ap = parse_number(f[5]);
        r.n_real = static_cast<std::size_t>(parse_number(f[6]));
        r.n_fake = static_cast<std::size_t>(parse_number(f[7]));
        report.rows.push_back(std::move(r));
    }
    return report;
}

EvalReport report_from_json(const std::string& text) {
    EvalReport report;
    try {
        const auto j = nlohmann::json::parse(text);
        for (const auto& jr : j.at("rows")) {
            ReportRow r;
            r.train_sources = jr.at("train_sources").get<std::string>();
            r.test_source = jr.at("test_source").get<std::string>();
            r.perturbation = jr.at("perturbation").get<std::string>();
            r.param = jr.at("param").get<double>();
            r.auc = jr.at("auc").get<double>();
            r.ap = jr.at("ap").get<double>();
            r.n_real = jr.at("n_real").get<std::size_t>();
            r.n_fake = jr.at("n_fake").get<std::size_t>();
            report.rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaMismatch, std::string("report JSON: ") + e.what());
    }
    return report;
}

void write_report(const EvalReport& report, const std::filesystem::path& path, ReportFormat format) {
    const std::string text = format == ReportFormat::Csv ? report_to_csv(report) : report_to_json(report);
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

EvalReport read_report(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const std::string text(bytes.begin(), bytes.end());
    return path.extension() == ".json" ? report_from_json(text) : report_from_csv(text);
}

}  // namespace freqspec
