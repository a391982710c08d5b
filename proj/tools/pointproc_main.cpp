#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pointproc/compensator.hpp"
#include "pointproc/event_sequence.hpp"
#include "pointproc/gaussian.hpp"
#include "pointproc/io.hpp"
#include "pointproc/likelihood.hpp"
#include "pointproc/markov.hpp"
#include "pointproc/simulate.hpp"

namespace {

using nlohmann::json;
using namespace pointproc;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

// Exit-code classification: bad inputs and bad flags are validation errors,
// anything that fails while computing (diverging hazard, singular likelihood,
// explosion guard) is a numeric failure.
class NumericFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Fn>
auto numeric_phase(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw NumericFailure(e.what());
    }
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(token, &used));
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + token +
                                        "'");
        }
    }
    if (values.empty()) {
        throw std::invalid_argument(std::string(what) + " must not be empty");
    }
    return values;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') {
            std::cout << "\n";
        }
    } else {
        io::write_file(out_path, text);
    }
}

// Flags override the JSON config file; a value is taken from the config only
// when its flag was not given on the command line.
struct ConfigLayer {
    json data = json::object();

    void load(const std::string& path) {
        if (path.empty()) return;
        try {
            data = json::parse(io::slurp_file(path));
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("config parse error: ") + e.what());
        }
        if (!data.is_object()) {
            throw std::invalid_argument("config file must hold a JSON object");
        }
    }

    template <typename T>
    void merge(const CLI::Option* opt, const char* key, T& value) const {
        if (opt->count() == 0 && data.contains(key)) {
            try {
                value = data[key].get<T>();
            } catch (const json::exception&) {
                throw std::invalid_argument(std::string("config field '") + key +
                                            "' has the wrong type");
            }
        }
    }

    bool provided(const CLI::Option* opt, const char* key) const {
        return opt->count() > 0 || data.contains(key);
    }
};

EventSequence load_events(const std::string& path, double horizon) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open events file: " + path);
    }
    return io::read_events_csv(in, horizon);
}

IntensityModel load_model_spec(const std::string& spec) {
    // A spec is inline JSON, a "kind:v1,v2" shorthand, or a path to a JSON file.
    if (!spec.empty() && spec.front() == '{') {
        return io::model_from_json(spec);
    }
    if (spec.find(':') != std::string::npos) {
        return io::parse_model_spec(spec);
    }
    return io::model_from_json(io::slurp_file(spec));
}

int cmd_simulate(const std::string& model_spec, const std::string& hazard_path, double horizon,
                 std::uint64_t seed, std::size_t n_paths, const std::string& out_path) {
    std::string text;
    std::ostringstream buffer;
    if (!model_spec.empty()) {
        const IntensityModel model = load_model_spec(model_spec);
        if (n_paths == 1) {
            const EventSequence events =
                numeric_phase([&] { return simulate_thinning(model, horizon, RandomStream(seed, 0)); });
            io::write_events_csv(buffer, events);
        } else {
            const auto ensemble =
                numeric_phase([&] { return simulate_ensemble(model, horizon, n_paths, seed); });
            io::write_ensemble_csv(buffer, ensemble);
        }
    } else {
        const HazardSpec spec = io::hazard_from_json(io::slurp_file(hazard_path));
        if (n_paths == 1) {
            const EventSequence events = numeric_phase(
                [&] { return simulate_from_hazard(spec, horizon, RandomStream(seed, 0)); });
            io::write_events_csv(buffer, events);
        } else {
            const auto ensemble =
                numeric_phase([&] { return simulate_ensemble(spec, horizon, n_paths, seed); });
            io::write_ensemble_csv(buffer, ensemble);
        }
    }
    emit(buffer.str(), out_path);
    return kExitOk;
}

int cmd_compensate(const std::string& events_path, double horizon, const std::string& model_spec,
                   const std::string& hazard_path, double grid_step,
                   const std::string& out_path) {
    const EventSequence events = load_events(events_path, horizon);
    const CompensatorPath path = numeric_phase([&] {
        if (!model_spec.empty()) {
            return model_compensator(load_model_spec(model_spec), events, grid_step);
        }
        return ihf_compensator(io::hazard_from_json(io::slurp_file(hazard_path)), events);
    });
    std::ostringstream buffer;
    io::write_path_csv(buffer, path);
    emit(buffer.str(), out_path);
    return kExitOk;
}

int cmd_loglik_point(const std::string& model_spec, const std::string& events_path, double t,
                     double horizon, const std::string& out_path) {
    const IntensityModel model = load_model_spec(model_spec);
    const EventSequence events = load_events(events_path, horizon);
    const double value = numeric_phase([&] { return log_likelihood_ratio(events, model, t); });
    json j;
    if (std::isinf(value) && value < 0.0) {
        j = {{"loglik", nullptr}, {"singular", true}};
        emit(j.dump(2), out_path);
        return kExitNumeric;
    }
    j = {{"loglik", value}};
    emit(j.dump(2), out_path);
    return kExitOk;
}

int cmd_loglik_gaussian(const std::string& path_file, const std::string& velocity_file,
                        const std::string& out_path) {
    std::ifstream wp(path_file);
    if (!wp) throw std::invalid_argument("cannot open path file: " + path_file);
    std::ifstream vp(velocity_file);
    if (!vp) throw std::invalid_argument("cannot open velocity file: " + velocity_file);
    std::vector<double> grid, values, vgrid, vvalues;
    io::read_grid_csv(wp, grid, values);
    io::read_grid_csv(vp, vgrid, vvalues);
    const GaussianPath w(std::move(grid), std::move(values));
    const VelocityPath phi(std::move(vgrid), std::move(vvalues));
    const double value = numeric_phase([&] { return girsanov_log_ratio(w, phi); });
    emit(json{{"loglik", value}}.dump(2), out_path);
    return kExitOk;
}

int cmd_loglik_markov(const std::string& path_file, const std::string& model_file,
                      const std::string& reference_file, const std::string& out_path) {
    std::ifstream ps(path_file);
    if (!ps) throw std::invalid_argument("cannot open state path file: " + path_file);
    const auto paths = io::read_state_paths_csv(ps);
    if (paths.size() != 1) {
        throw std::invalid_argument("loglik markov expects exactly one state path");
    }
    const MarkovModel p = io::markov_from_json(io::slurp_file(model_file));
    const MarkovModel p0 = io::markov_from_json(io::slurp_file(reference_file));
    const double value = numeric_phase([&] { return markov_log_ratio(paths.front(), p, p0); });
    json j;
    if (std::isinf(value) && value < 0.0) {
        j = {{"loglik", nullptr}, {"singular", true}};
        emit(j.dump(2), out_path);
        return kExitNumeric;
    }
    emit(json{{"loglik", value}}.dump(2), out_path);
    return kExitOk;
}

ModelFamily family_from_name(const std::string& name) {
    if (name == "constant") return ModelFamily::constant;
    if (name == "baseline") return ModelFamily::baseline;
    if (name == "hawkes_const") return ModelFamily::hawkes_const;
    if (name == "hawkes_exp") return ModelFamily::hawkes_exp;
    throw std::invalid_argument("unknown family '" + name +
                                "' (expected constant|baseline|hawkes_const|hawkes_exp)");
}

int cmd_fit_point(const std::string& family_name, const std::string& events_path, double horizon,
                  const std::string& init_text, const std::string& fix_text,
                  const std::string& out_path) {
    const ModelFamily family = family_from_name(family_name);
    const EventSequence events = load_events(events_path, horizon);
    const auto names = family_param_names(family);

    std::vector<double> init(family_dimension(family), 0.5);
    if (!init_text.empty()) {
        init = parse_double_list(init_text, "--init");
        if (init.size() != family_dimension(family)) {
            throw std::invalid_argument("--init needs " +
                                        std::to_string(family_dimension(family)) +
                                        " comma-separated values for this family");
        }
    }

    FitOptions options;
    options.fixed.resize(family_dimension(family));
    if (!fix_text.empty()) {
        std::stringstream stream(fix_text);
        std::string assignment;
        while (std::getline(stream, assignment, ',')) {
            const auto eq = assignment.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("--fix expects name=value pairs");
            }
            const std::string name = assignment.substr(0, eq);
            const double value = parse_double_list(assignment.substr(eq + 1), "--fix value")[0];
            const auto it = std::find(names.begin(), names.end(), name);
            if (it == names.end()) {
                throw std::invalid_argument("--fix: unknown parameter '" + name + "'");
            }
            options.fixed[static_cast<std::size_t>(it - names.begin())] = value;
        }
    }

    const FitResult fit = numeric_phase([&] { return fit_mle(events, family, init, options); });
    json params = json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
        params[names[i]] = fit.params[i];
    }
    const json j = {{"loglik", fit.loglik},
                    {"params", std::move(params)},
                    {"converged", fit.converged},
                    {"iterations", fit.iterations},
                    {"at_boundary", fit.at_boundary}};
    emit(j.dump(2), out_path);
    return kExitOk;
}

int cmd_fit_markov(const std::string& paths_file, std::size_t n_states,
                   const std::string& out_path) {
    std::ifstream in(paths_file);
    if (!in) throw std::invalid_argument("cannot open state paths file: " + paths_file);
    const auto paths = io::read_state_paths_csv(in);
    const MarkovFit fit = numeric_phase([&] { return fit_markov(paths, n_states); });
    emit(io::markov_to_json(fit.model, &fit.undetermined_rows), out_path);
    return kExitOk;
}

int cmd_gof(const std::string& events_path, double horizon, const std::string& compensator_path,
            const std::string& model_spec, double grid_step, const std::string& out_path) {
    const EventSequence events = load_events(events_path, horizon);
    const CompensatorPath compensator = numeric_phase([&] {
        if (!compensator_path.empty()) {
            std::ifstream in(compensator_path);
            if (!in) {
                throw std::invalid_argument("cannot open compensator file: " + compensator_path);
            }
            return io::read_compensator_csv(in);
        }
        return model_compensator(load_model_spec(model_spec), events, grid_step);
    });
    const auto report = numeric_phase([&] {
        const EventSequence rescaled = time_rescale(events, compensator);
        return gof_exp1(waiting_times(rescaled));
    });
    const json j = {{"ks",
                     {{"stat", report.statistic},
                      {"pass", report.pass},
                      {"critical_value", report.critical_value}}},
                    {"n", report.n}};
    emit(j.dump(2), out_path);
    return kExitOk;
}

int cmd_demo_anticipative(double a, double horizon, std::size_t n_paths, std::uint64_t seed,
                          const std::string& out_path) {
    const AnticipativityReport report =
        numeric_phase([&] { return anticipativity_report(n_paths, a, horizon, seed); });
    emit(io::anticipativity_to_json(report), out_path);
    std::cerr << "drift estimate " << io::format_double(report.drift_mean) << " (se "
              << io::format_double(report.drift_se) << "), expected -exp(-a) drift "
              << io::format_double(report.expected_drift) << "\n";
    return report.demonstrated() ? kExitOk : kExitNumeric;
}

int cmd_plot_data(const std::vector<double>& mu, double phi0, double horizon, std::uint64_t seed,
                  double grid_step, const std::string& out_path) {
    const HawkesConst model{{mu[0], mu[1], mu[2]}, phi0};
    const IntensityModel variant = model;
    const EventSequence events =
        numeric_phase([&] { return simulate_thinning(variant, horizon, RandomStream(seed, 0)); });

    std::vector<double> grid;
    for (double t = 0.0; t < horizon; t += grid_step) {
        grid.push_back(t);
    }
    grid.push_back(horizon);

    std::ostringstream buffer;
    buffer << "t,lambda,N\n";
    const auto row = [&](double t, double lambda, std::size_t count) {
        buffer << io::format_double(t) << "," << io::format_double(lambda) << "," << count
               << "\n";
    };
    std::size_t next_event = 0;
    const auto times = events.times();
    for (double t : grid) {
        // Exact breakpoints first: a pre/post row pair per event.
        bool event_on_grid_point = false;
        while (next_event < times.size() && times[next_event] <= t) {
            const double te = times[next_event];
            row(te, intensity_at(variant, events, te), events.count_before(te));
            row(te, intensity_right(variant, events, te), events.count_at(te));
            event_on_grid_point = te == t;
            ++next_event;
        }
        if (!event_on_grid_point) {
            row(t, intensity_at(variant, events, t), events.count_before(t));
        }
    }
    emit(buffer.str(), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pointproc: simulation, compensators, likelihood ratios and goodness-of-fit for "
        "conditionally Poisson counting processes, with Brownian and Markov reference models"};
    app.require_subcommand(1);

    int exit_code = kExitOk;

    // ---- simulate ----------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Sample event times from a model or hazard");
    {
        static std::string config, model_spec, hazard, out;
        static double horizon = 0.0;
        static std::uint64_t seed = 0;
        static std::size_t paths = 1;
        simulate->add_option("--config", config, "JSON config file");
        auto* model_opt = simulate->add_option("--model", model_spec,
                                               "model spec: kind:v1,v2 | inline JSON | file");
        auto* hazard_opt = simulate->add_option("--hazard", hazard, "hazard spec JSON file");
        auto* horizon_opt = simulate->add_option("--horizon", horizon, "time horizon");
        auto* seed_opt = simulate->add_option("--seed", seed, "root seed (required)");
        auto* paths_opt = simulate->add_option("--paths", paths, "number of paths");
        auto* out_opt = simulate->add_option("--out", out, "output CSV path (default stdout)");
        simulate->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(model_opt, "model", model_spec);
            layer.merge(hazard_opt, "hazard", hazard);
            layer.merge(horizon_opt, "horizon", horizon);
            layer.merge(seed_opt, "seed", seed);
            layer.merge(paths_opt, "paths", paths);
            layer.merge(out_opt, "out", out);
            if (model_spec.empty() == hazard.empty()) {
                throw std::invalid_argument("simulate needs exactly one of --model / --hazard");
            }
            if (!layer.provided(horizon_opt, "horizon")) {
                throw std::invalid_argument("simulate: missing --horizon");
            }
            if (!layer.provided(seed_opt, "seed")) {
                throw std::invalid_argument("simulate: missing --seed (no implicit entropy)");
            }
            exit_code = cmd_simulate(model_spec, hazard, horizon, seed, paths, out);
        });
    }

    // ---- compensate --------------------------------------------------------
    auto* compensate =
        app.add_subcommand("compensate", "Mean-intensity path for observed events");
    {
        static std::string config, events, model_spec, hazard, out;
        static double horizon = 0.0, grid = 0.1;
        compensate->add_option("--config", config, "JSON config file");
        auto* events_opt = compensate->add_option("--events", events, "event CSV file");
        auto* horizon_opt = compensate->add_option("--horizon", horizon, "time horizon");
        auto* model_opt = compensate->add_option("--model", model_spec, "model spec");
        auto* hazard_opt = compensate->add_option("--hazard", hazard, "hazard spec JSON file");
        auto* grid_opt = compensate->add_option("--grid", grid, "grid step for model paths");
        auto* out_opt = compensate->add_option("--out", out, "output CSV path");
        compensate->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(events_opt, "events", events);
            layer.merge(horizon_opt, "horizon", horizon);
            layer.merge(model_opt, "model", model_spec);
            layer.merge(hazard_opt, "hazard", hazard);
            layer.merge(grid_opt, "grid", grid);
            layer.merge(out_opt, "out", out);
            if (!layer.provided(events_opt, "events")) {
                throw std::invalid_argument("compensate: missing --events");
            }
            if (!layer.provided(horizon_opt, "horizon")) {
                throw std::invalid_argument("compensate: missing --horizon");
            }
            if (model_spec.empty() == hazard.empty()) {
                throw std::invalid_argument("compensate needs exactly one of --model / --hazard");
            }
            exit_code = cmd_compensate(events, horizon, model_spec, hazard, grid, out);
        });
    }

    // ---- loglik ------------------------------------------------------------
    auto* loglik = app.add_subcommand("loglik", "Log-likelihood ratios against reference laws");
    loglik->require_subcommand(1);
    {
        auto* point = loglik->add_subcommand("point", "events vs unit Poisson");
        static std::string config, model_spec, events, out;
        static double t = 0.0, horizon = 0.0;
        point->add_option("--config", config, "JSON config file");
        auto* model_opt = point->add_option("--model", model_spec, "model spec");
        auto* events_opt = point->add_option("--events", events, "event CSV file");
        auto* t_opt = point->add_option("--t", t, "evaluation time");
        auto* horizon_opt =
            point->add_option("--horizon", horizon, "horizon (default: evaluation time)");
        auto* out_opt = point->add_option("--out", out, "output JSON path");
        point->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(model_opt, "model", model_spec);
            layer.merge(events_opt, "events", events);
            layer.merge(t_opt, "t", t);
            layer.merge(horizon_opt, "horizon", horizon);
            layer.merge(out_opt, "out", out);
            if (model_spec.empty()) throw std::invalid_argument("loglik point: missing --model");
            if (events.empty()) throw std::invalid_argument("loglik point: missing --events");
            if (!layer.provided(t_opt, "t")) {
                throw std::invalid_argument("loglik point: missing --t");
            }
            if (!layer.provided(horizon_opt, "horizon")) {
                horizon = t;
            }
            exit_code = cmd_loglik_point(model_spec, events, t, horizon, out);
        });
    }
    {
        auto* gaussian = loglik->add_subcommand("gaussian", "path vs standard Brownian motion");
        static std::string config, path_file, velocity_file, out;
        gaussian->add_option("--config", config, "JSON config file");
        auto* path_opt = gaussian->add_option("--path", path_file, "path CSV (t,value)");
        auto* velocity_opt =
            gaussian->add_option("--velocity", velocity_file, "velocity CSV (t,value)");
        auto* out_opt = gaussian->add_option("--out", out, "output JSON path");
        gaussian->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(path_opt, "path", path_file);
            layer.merge(velocity_opt, "velocity", velocity_file);
            layer.merge(out_opt, "out", out);
            if (path_file.empty()) throw std::invalid_argument("loglik gaussian: missing --path");
            if (velocity_file.empty()) {
                throw std::invalid_argument("loglik gaussian: missing --velocity");
            }
            exit_code = cmd_loglik_gaussian(path_file, velocity_file, out);
        });
    }
    {
        auto* markov = loglik->add_subcommand("markov", "state path vs stationary chain");
        static std::string config, path_file, model_file, reference_file, out;
        markov->add_option("--config", config, "JSON config file");
        auto* path_opt = markov->add_option("--path", path_file, "state path CSV");
        auto* model_opt = markov->add_option("--model", model_file, "model JSON file");
        auto* ref_opt = markov->add_option("--reference", reference_file, "reference JSON file");
        auto* out_opt = markov->add_option("--out", out, "output JSON path");
        markov->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(path_opt, "path", path_file);
            layer.merge(model_opt, "model", model_file);
            layer.merge(ref_opt, "reference", reference_file);
            layer.merge(out_opt, "out", out);
            if (path_file.empty()) throw std::invalid_argument("loglik markov: missing --path");
            if (model_file.empty()) throw std::invalid_argument("loglik markov: missing --model");
            if (reference_file.empty()) {
                throw std::invalid_argument("loglik markov: missing --reference");
            }
            exit_code = cmd_loglik_markov(path_file, model_file, reference_file, out);
        });
    }

    // ---- fit ---------------------------------------------------------------
    auto* fit = app.add_subcommand("fit", "Maximum-likelihood fits");
    fit->require_subcommand(1);
    {
        auto* point = fit->add_subcommand("point", "intensity family MLE");
        static std::string config, family, events, init, fix, out;
        static double horizon = 0.0;
        point->add_option("--config", config, "JSON config file");
        auto* family_opt = point->add_option(
            "--family", family, "constant|baseline|hawkes_const|hawkes_exp");
        auto* events_opt = point->add_option("--events", events, "event CSV file");
        auto* horizon_opt = point->add_option("--horizon", horizon, "time horizon");
        auto* init_opt = point->add_option("--init", init, "comma-separated initial point");
        auto* fix_opt = point->add_option("--fix", fix, "fixed params, e.g. b=0,c=0");
        auto* out_opt = point->add_option("--out", out, "output JSON path");
        point->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(family_opt, "family", family);
            layer.merge(events_opt, "events", events);
            layer.merge(horizon_opt, "horizon", horizon);
            layer.merge(init_opt, "init", init);
            layer.merge(fix_opt, "fix", fix);
            layer.merge(out_opt, "out", out);
            if (family.empty()) throw std::invalid_argument("fit point: missing --family");
            if (events.empty()) throw std::invalid_argument("fit point: missing --events");
            if (!layer.provided(horizon_opt, "horizon")) {
                throw std::invalid_argument("fit point: missing --horizon");
            }
            exit_code = cmd_fit_point(family, events, horizon, init, fix, out);
        });
    }
    {
        auto* markov = fit->add_subcommand("markov", "empirical transition matrix");
        static std::string config, paths_file, out;
        static std::size_t states = 2;
        markov->add_option("--config", config, "JSON config file");
        auto* paths_opt = markov->add_option("--paths", paths_file, "state paths CSV");
        auto* states_opt = markov->add_option("--states", states, "number of states");
        auto* out_opt = markov->add_option("--out", out, "output JSON path");
        markov->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(paths_opt, "paths", paths_file);
            layer.merge(states_opt, "states", states);
            layer.merge(out_opt, "out", out);
            if (paths_file.empty()) throw std::invalid_argument("fit markov: missing --paths");
            if (!layer.provided(states_opt, "states")) {
                throw std::invalid_argument("fit markov: missing --states");
            }
            exit_code = cmd_fit_markov(paths_file, states, out);
        });
    }

    // ---- gof ---------------------------------------------------------------
    auto* gof = app.add_subcommand("gof", "Time-rescaling goodness-of-fit (KS vs Exp(1))");
    {
        static std::string config, events, compensator_file, model_spec, out;
        static double horizon = 0.0, grid = 0.01;
        gof->add_option("--config", config, "JSON config file");
        auto* events_opt = gof->add_option("--events", events, "event CSV file");
        auto* horizon_opt = gof->add_option("--horizon", horizon, "time horizon");
        auto* comp_opt =
            gof->add_option("--compensator", compensator_file, "compensator CSV file");
        auto* model_opt = gof->add_option("--model", model_spec, "model spec");
        auto* grid_opt = gof->add_option("--grid", grid, "grid step for model compensators");
        auto* out_opt = gof->add_option("--out", out, "output JSON path");
        gof->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(events_opt, "events", events);
            layer.merge(horizon_opt, "horizon", horizon);
            layer.merge(comp_opt, "compensator", compensator_file);
            layer.merge(model_opt, "model", model_spec);
            layer.merge(grid_opt, "grid", grid);
            layer.merge(out_opt, "out", out);
            if (events.empty()) throw std::invalid_argument("gof: missing --events");
            if (!layer.provided(horizon_opt, "horizon")) {
                throw std::invalid_argument("gof: missing --horizon");
            }
            if (compensator_file.empty() == model_spec.empty()) {
                throw std::invalid_argument("gof needs exactly one of --compensator / --model");
            }
            exit_code = cmd_gof(events, horizon, compensator_file, model_spec, grid, out);
        });
    }

    // ---- demo-anticipative ---------------------------------------------------
    auto* demo = app.add_subcommand(
        "demo-anticipative",
        "Show that a look-ahead intensity breaks the compensated-count martingale");
    {
        static std::string config, out;
        static double a = 1.0, horizon = 0.0;
        static std::size_t paths = 100000;
        static std::uint64_t seed = 0;
        demo->add_option("--config", config, "JSON config file");
        auto* a_opt = demo->add_option("--a", a, "look-ahead window length");
        auto* horizon_opt =
            demo->add_option("--horizon", horizon, "simulation horizon (default a + 1)");
        auto* paths_opt = demo->add_option("--paths", paths, "number of paths");
        auto* seed_opt = demo->add_option("--seed", seed, "root seed (required)");
        auto* out_opt = demo->add_option("--out", out, "output JSON path");
        demo->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(a_opt, "a", a);
            layer.merge(horizon_opt, "horizon", horizon);
            layer.merge(paths_opt, "paths", paths);
            layer.merge(seed_opt, "seed", seed);
            layer.merge(out_opt, "out", out);
            if (!layer.provided(seed_opt, "seed")) {
                throw std::invalid_argument("demo-anticipative: missing --seed");
            }
            if (!layer.provided(horizon_opt, "horizon")) {
                horizon = a + 1.0;
            }
            exit_code = cmd_demo_anticipative(a, horizon, paths, seed, out);
        });
    }

    // ---- plot-data -----------------------------------------------------------
    auto* plot = app.add_subcommand(
        "plot-data", "CSV (t,lambda,N) of one self-exciting path, dense grid plus event rows");
    {
        static std::string config, mu_text = "0.3,0.2,0.1", out;
        static double phi0 = 0.2, horizon = 0.0, grid = 0.1;
        static std::uint64_t seed = 0;
        plot->add_option("--config", config, "JSON config file");
        auto* mu_opt = plot->add_option("--mu", mu_text, "baseline a,b,c");
        auto* phi_opt = plot->add_option("--phi0", phi0, "per-event intensity increment");
        auto* horizon_opt = plot->add_option("--horizon", horizon, "time horizon");
        auto* seed_opt = plot->add_option("--seed", seed, "root seed (required)");
        auto* grid_opt = plot->add_option("--grid", grid, "dense sampling step");
        auto* out_opt = plot->add_option("--out", out, "output CSV path");
        plot->callback([=, &exit_code]() {
            ConfigLayer layer;
            layer.load(config);
            layer.merge(mu_opt, "mu", mu_text);
            layer.merge(phi_opt, "phi0", phi0);
            layer.merge(horizon_opt, "horizon", horizon);
            layer.merge(seed_opt, "seed", seed);
            layer.merge(grid_opt, "grid", grid);
            layer.merge(out_opt, "out", out);
            if (!layer.provided(horizon_opt, "horizon")) {
                throw std::invalid_argument("plot-data: missing --horizon");
            }
            if (!layer.provided(seed_opt, "seed")) {
                throw std::invalid_argument("plot-data: missing --seed");
            }
            const auto mu = parse_double_list(mu_text, "--mu");
            if (mu.size() != 3) {
                throw std::invalid_argument("--mu needs three values a,b,c");
            }
            exit_code = cmd_plot_data(mu, phi0, horizon, seed, grid, out);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return exit_code;
}
