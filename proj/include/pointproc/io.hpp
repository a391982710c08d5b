#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pointproc/compensator.hpp"
#include "pointproc/compensator_path.hpp"
#include "pointproc/event_sequence.hpp"
#include "pointproc/gaussian.hpp"
#include "pointproc/hazard_spec.hpp"
#include "pointproc/intensity_model.hpp"
#include "pointproc/markov.hpp"

namespace pointproc::io {

/// 17 significant digits: doubles round-trip bit-exactly through text.
std::string format_double(double value);

// --- event CSV: header "time", one float per row -------------------------

void write_events_csv(std::ostream& out, const EventSequence& events);
EventSequence read_events_csv(std::istream& in, double horizon);

// --- ensemble CSV: header "path_id,time" ----------------------------------

void write_ensemble_csv(std::ostream& out, const std::vector<EventSequence>& ensemble);
std::vector<EventSequence> read_ensemble_csv(std::istream& in, double horizon);

// --- compensator / generic path CSV: header "t,value" ---------------------

void write_path_csv(std::ostream& out, const CompensatorPath& path);
CompensatorPath read_compensator_csv(std::istream& in);

void write_grid_csv(std::ostream& out, std::span<const double> grid,
                    std::span<const double> values);
/// Reads a "t,value" file into parallel arrays (Gaussian paths, velocities).
void read_grid_csv(std::istream& in, std::vector<double>& grid, std::vector<double>& values);

// --- model spec JSON: {"kind": ..., "params": {...}} ----------------------

IntensityModel model_from_json(const std::string& text);
std::string model_to_json(const IntensityModel& model);

/// Inline shorthand "kind:v1,v2,..." (e.g. "constant:2",
/// "hawkes_const:0.3,0.2,0.1,0.2"); falls through to JSON when the string
/// starts with '{'.
IntensityModel parse_model_spec(const std::string& spec);

// --- hazard spec JSON: {"dists": [{"kind": ...}, ...]} --------------------

HazardSpec hazard_from_json(const std::string& text);

// --- Markov model JSON: {"n": N, "p": [[...]], "v0": [...]} ----------------

MarkovModel markov_from_json(const std::string& text);
std::string markov_to_json(const MarkovModel& model, const std::vector<bool>* undetermined = nullptr);

// --- state path CSV: header "state" or "path_id,state" ---------------------

void write_state_paths_csv(std::ostream& out, const std::vector<StatePath>& paths);
std::vector<StatePath> read_state_paths_csv(std::istream& in);

// --- martingale test report JSON -------------------------------------------

std::string report_to_json(const MartingaleTestReport& report, std::uint64_t seed);
std::string anticipativity_to_json(const AnticipativityReport& report);

/// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string slurp_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pointproc::io
