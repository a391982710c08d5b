#include "pointproc/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pointproc::io {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

double parse_double(const std::string& token, const char* what) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("failed to parse ") + what + ": '" + token + "'");
    }
    if (consumed != token.size()) {
        throw std::runtime_error(std::string("trailing junk in ") + what + ": '" + token + "'");
    }
    return value;
}

std::string expect_header(std::istream& in, const std::string& expected) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("CSV: missing header line (expected '" + expected + "')");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != expected) {
        throw std::runtime_error("CSV: expected header '" + expected + "', found '" + line + "'");
    }
    return line;
}

bool next_row(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            return true;
        }
    }
    return false;
}

std::pair<std::string, std::string> split2(const std::string& line) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
        throw std::runtime_error("CSV: expected two comma-separated fields in '" + line + "'");
    }
    return {line.substr(0, comma), line.substr(comma + 1)};
}

}  // namespace

void write_events_csv(std::ostream& out, const EventSequence& events) {
    out << "time\n";
    for (double t : events.times()) {
        out << format_double(t) << "\n";
    }
}

EventSequence read_events_csv(std::istream& in, double horizon) {
    expect_header(in, "time");
    std::vector<double> times;
    std::string line;
    while (next_row(in, line)) {
        times.push_back(parse_double(line, "field 'time'"));
    }
    return EventSequence(horizon, std::move(times));
}

void write_ensemble_csv(std::ostream& out, const std::vector<EventSequence>& ensemble) {
    out << "path_id,time\n";
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        for (double t : ensemble[i].times()) {
            out << i << "," << format_double(t) << "\n";
        }
    }
}

std::vector<EventSequence> read_ensemble_csv(std::istream& in, double horizon) {
    expect_header(in, "path_id,time");
    std::vector<std::vector<double>> buckets;
    std::string line;
    while (next_row(in, line)) {
        const auto [id_text, time_text] = split2(line);
        const double id_value = parse_double(id_text, "field 'path_id'");
        const auto id = static_cast<std::size_t>(id_value);
        if (id_value < 0.0 || static_cast<double>(id) != id_value) {
            throw std::runtime_error("CSV: field 'path_id' must be a non-negative integer");
        }
        if (id >= buckets.size()) {
            buckets.resize(id + 1);
        }
        buckets[id].push_back(parse_double(time_text, "field 'time'"));
    }
    std::vector<EventSequence> ensemble;
    ensemble.reserve(buckets.size());
    for (auto& times : buckets) {
        ensemble.emplace_back(horizon, std::move(times));
    }
    return ensemble;
}

void write_path_csv(std::ostream& out, const CompensatorPath& path) {
    out << "t,value\n";
    const auto bp = path.breakpoints();
    const auto values = path.values();
    for (std::size_t i = 0; i < bp.size(); ++i) {
        out << format_double(bp[i]) << "," << format_double(values[i]) << "\n";
    }
}

CompensatorPath read_compensator_csv(std::istream& in) {
    expect_header(in, "t,value");
    std::vector<double> breakpoints;
    std::vector<double> values;
    std::string line;
    while (next_row(in, line)) {
        const auto [t_text, v_text] = split2(line);
        breakpoints.push_back(parse_double(t_text, "field 't'"));
        values.push_back(parse_double(v_text, "field 'value'"));
    }
    if (breakpoints.empty()) {
        throw std::runtime_error("compensator CSV has no rows");
    }
    // Evaluation only depends on the breakpoint values, so linear segments
    // reproduce the original path (flat pieces have equal endpoint values).
    std::vector<SegmentKind> kinds(breakpoints.size() - 1, SegmentKind::linear);
    return CompensatorPath(std::move(breakpoints), std::move(values), std::move(kinds));
}

void write_grid_csv(std::ostream& out, std::span<const double> grid,
                    std::span<const double> values) {
    out << "t,value\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_double(grid[i]) << "," << format_double(values[i]) << "\n";
    }
}

void read_grid_csv(std::istream& in, std::vector<double>& grid, std::vector<double>& values) {
    expect_header(in, "t,value");
    grid.clear();
    values.clear();
    std::string line;
    while (next_row(in, line)) {
        const auto [t_text, v_text] = split2(line);
        grid.push_back(parse_double(t_text, "field 't'"));
        values.push_back(parse_double(v_text, "field 'value'"));
    }
}

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw std::runtime_error(std::string("JSON: missing numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

}  // namespace

IntensityModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("model JSON parse error: ") + e.what());
    }
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw std::runtime_error("model JSON: missing string field 'kind'");
    }
    const std::string kind = j["kind"].get<std::string>();
    const json params = j.value("params", json::object());
    IntensityModel model;
    if (kind == "constant") {
        model = ConstantRate{require_number(params, "rate")};
    } else if (kind == "baseline") {
        model = DeterministicBaseline{require_number(params, "a"), require_number(params, "b"),
                                      require_number(params, "c")};
    } else if (kind == "hawkes_const") {
        model = HawkesConst{{require_number(params, "a"), require_number(params, "b"),
                             require_number(params, "c")},
                            require_number(params, "phi0")};
    } else if (kind == "hawkes_exp") {
        model = HawkesExp{{require_number(params, "a"), require_number(params, "b"),
                           require_number(params, "c")},
                          require_number(params, "alpha"), require_number(params, "beta")};
    } else if (kind == "one_shot") {
        model = OneShot{require_number(params, "rate")};
    } else {
        throw std::runtime_error("model JSON: unknown kind '" + kind + "'");
    }
    validate_model(model);
    return model;
}

std::string model_to_json(const IntensityModel& model) {
    json j;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ConstantRate>) {
                j = {{"kind", "constant"}, {"params", {{"rate", m.rate}}}};
            } else if constexpr (std::is_same_v<M, DeterministicBaseline>) {
                j = {{"kind", "baseline"}, {"params", {{"a", m.a}, {"b", m.b}, {"c", m.c}}}};
            } else if constexpr (std::is_same_v<M, HawkesConst>) {
                j = {{"kind", "hawkes_const"},
                     {"params",
                      {{"a", m.baseline.a}, {"b", m.baseline.b}, {"c", m.baseline.c},
                       {"phi0", m.phi0}}}};
            } else if constexpr (std::is_same_v<M, HawkesExp>) {
                j = {{"kind", "hawkes_exp"},
                     {"params",
                      {{"a", m.baseline.a}, {"b", m.baseline.b}, {"c", m.baseline.c},
                       {"alpha", m.alpha}, {"beta", m.beta}}}};
            } else {
                static_assert(std::is_same_v<M, OneShot>);
                j = {{"kind", "one_shot"}, {"params", {{"rate", m.rate}}}};
            }
        },
        model);
    return j.dump();
}

IntensityModel parse_model_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') {
        return model_from_json(spec);
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::runtime_error("model spec: expected 'kind:v1,v2,...' or inline JSON, got '" +
                                 spec + "'");
    }
    const std::string kind = spec.substr(0, colon);
    std::vector<double> values;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string token =
            rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        values.push_back(parse_double(token, "model parameter"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    const auto expect = [&](std::size_t n) {
        if (values.size() != n) {
            throw std::runtime_error("model spec '" + kind + "' expects " + std::to_string(n) +
                                     " parameters, got " + std::to_string(values.size()));
        }
    };
    IntensityModel model;
    if (kind == "constant") {
        expect(1);
        model = ConstantRate{values[0]};
    } else if (kind == "baseline") {
        expect(3);
        model = DeterministicBaseline{values[0], values[1], values[2]};
    } else if (kind == "hawkes_const") {
        expect(4);
        model = HawkesConst{{values[0], values[1], values[2]}, values[3]};
    } else if (kind == "hawkes_exp") {
        expect(5);
        model = HawkesExp{{values[0], values[1], values[2]}, values[3], values[4]};
    } else if (kind == "one_shot") {
        expect(1);
        model = OneShot{values[0]};
    } else {
        throw std::runtime_error("model spec: unknown kind '" + kind + "'");
    }
    validate_model(model);
    return model;
}

HazardSpec hazard_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("hazard JSON parse error: ") + e.what());
    }
    if (!j.contains("dists") || !j["dists"].is_array() || j["dists"].empty()) {
        throw std::runtime_error("hazard JSON: missing non-empty array field 'dists'");
    }
    std::vector<WaitingDist> dists;
    for (const json& d : j["dists"]) {
        if (!d.contains("kind") || !d["kind"].is_string()) {
            throw std::runtime_error("hazard JSON: each dist needs a string field 'kind'");
        }
        const std::string kind = d["kind"].get<std::string>();
        if (kind == "exponential") {
            dists.push_back(ExponentialWait{require_number(d, "rate")});
        } else if (kind == "defective") {
            DefectiveWait w;
            w.mass = require_number(d, "mass");
            w.rate = d.contains("rate") ? require_number(d, "rate") : 1.0;
            dists.push_back(w);
        } else if (kind == "point_mass") {
            dists.push_back(
                PointMassWait{require_number(d, "location"), require_number(d, "mass")});
        } else if (kind == "piecewise") {
            if (!d.contains("knots") || !d.contains("values")) {
                throw std::runtime_error("hazard JSON: piecewise dist needs 'knots' and 'values'");
            }
            PiecewiseCdf w;
            w.knots = d["knots"].get<std::vector<double>>();
            w.values = d["values"].get<std::vector<double>>();
            dists.push_back(std::move(w));
        } else {
            throw std::runtime_error("hazard JSON: unknown dist kind '" + kind + "'");
        }
    }
    return HazardSpec(std::move(dists));
}

MarkovModel markov_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("markov JSON parse error: ") + e.what());
    }
    const double n_value = require_number(j, "n");
    const auto n = static_cast<std::size_t>(n_value);
    if (!j.contains("p") || !j["p"].is_array() || !j.contains("v0") || !j["v0"].is_array()) {
        throw std::runtime_error("markov JSON: needs fields 'p' (matrix) and 'v0' (vector)");
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const json& row : j["p"]) {
        const auto r = row.get<std::vector<double>>();
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return MarkovModel(n, std::move(flat), j["v0"].get<std::vector<double>>());
}

std::string markov_to_json(const MarkovModel& model, const std::vector<bool>* undetermined) {
    json rows = json::array();
    for (std::size_t i = 0; i < model.n_states(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < model.n_states(); ++k) {
            row.push_back(model.p(i, k));
        }
        rows.push_back(std::move(row));
    }
    json j = {{"n", model.n_states()},
              {"p", std::move(rows)},
              {"v0", std::vector<double>(model.initial().begin(), model.initial().end())}};
    if (undetermined != nullptr) {
        j["undetermined_rows"] = *undetermined;
    }
    return j.dump();
}

void write_state_paths_csv(std::ostream& out, const std::vector<StatePath>& paths) {
    if (paths.size() == 1) {
        out << "state\n";
        for (std::size_t x : paths.front()) {
            out << x << "\n";
        }
        return;
    }
    out << "path_id,state\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t x : paths[i]) {
            out << i << "," << x << "\n";
        }
    }
}

std::vector<StatePath> read_state_paths_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("state CSV: missing header");
    }
    if (!header.empty() && header.back() == '\r') {
        header.pop_back();
    }
    std::vector<StatePath> paths;
    std::string line;
    const auto parse_index = [](const std::string& token, const char* what) {
        const double v = parse_double(token, what);
        const auto idx = static_cast<std::size_t>(v);
        if (v < 0.0 || static_cast<double>(idx) != v) {
            throw std::runtime_error(std::string("state CSV: ") + what +
                                     " must be a non-negative integer");
        }
        return idx;
    };
    if (header == "state") {
        paths.emplace_back();
        while (next_row(in, line)) {
            paths.back().push_back(parse_index(line, "field 'state'"));
        }
    } else if (header == "path_id,state") {
        while (next_row(in, line)) {
            const auto [id_text, state_text] = split2(line);
            const std::size_t id = parse_index(id_text, "field 'path_id'");
            if (id >= paths.size()) {
                paths.resize(id + 1);
            }
            paths[id].push_back(parse_index(state_text, "field 'state'"));
        }
    } else {
        throw std::runtime_error("state CSV: expected header 'state' or 'path_id,state'");
    }
    if (paths.empty() || paths.front().empty()) {
        throw std::runtime_error("state CSV: no states found");
    }
    return paths;
}

std::string report_to_json(const MartingaleTestReport& report, std::uint64_t seed) {
    json probes = json::array();
    for (const ProbeResult& p : report.probes) {
        probes.push_back({{"probe", p.probe},
                          {"s", p.window_start},
                          {"t", p.window_end},
                          {"mean", p.mean},
                          {"se", p.se},
                          {"z", p.z},
                          {"n_effective", p.n_effective},
                          {"skipped", p.skipped},
                          {"pass", p.pass}});
    }
    const json j = {{"probes", std::move(probes)},
                    {"threshold", report.threshold},
                    {"n_paths", report.n_paths},
                    {"seed", seed},
                    {"pass", report.pass}};
    return j.dump(2);
}

std::string anticipativity_to_json(const AnticipativityReport& report) {
    const json j = {
        {"a", report.a},
        {"horizon", report.horizon},
        {"t", report.t},
        {"n_paths", report.n_paths},
        {"seed", report.seed},
        {"drift_mean", report.drift_mean},
        {"drift_se", report.drift_se},
        {"expected_drift", report.expected_drift},
        {"anticipative", json::parse(report_to_json(report.anticipative, report.seed))},
        {"control", json::parse(report_to_json(report.control, report.seed))},
        {"demonstrated", report.demonstrated()},
    };
    return j.dump(2);
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open file for writing: " + path);
    }
    out << content;
    if (!out.good()) {
        throw std::runtime_error("failed writing file: " + path);
    }
}

}  // namespace pointproc::io
