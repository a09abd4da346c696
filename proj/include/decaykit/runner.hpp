#pragma once

// Scenario ingestion and command dispatch behind the decaykit CLI.  Kept in
// the library so tests can drive the exact surface the binary exposes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "decaykit/dos.hpp"

namespace decaykit::cli {

struct GridSpec {
    double n_max = 10.0;       // survival/regions grids, in oscillation counts
    double e_max = 0.0;        // dos grid (0: choose from the form factor)
    double y_max = 0.0;        // autocorr grid (0: choose from the width)
    long points = 400;
    bool log_spacing = false;
};

struct Scenario {
    // exactly one of the two resonance specifications
    std::optional<DimensionlessResonance> dimensionless;
    struct PhysicalPole {
        double re_kev;
        double im_ev;
    };
    std::vector<PhysicalPole> physical_poles;
    double nu = 0.5;
    double b_s = 1.0;          // exponential form-factor slope, dimensionless
    bool constant_ff = false;
    GridSpec grid;
    std::string out_path;      // empty: stdout
    std::string format = "csv";
};

Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text); // INI-style or JSON

// Build the density of states a scenario describes (dominant pole scaled to
// sigma_d = 1).
DensityOfStates scenario_dos(const Scenario& sc);

struct RunResult {
    int exit_code = 0;
    std::string output; // what was (or would be) written to the output file
};

// argv-style entry: run({"survival", "--config", path, ...}).
RunResult run(const std::vector<std::string>& args, std::ostream& err);

int main_entry(int argc, char** argv);

} // namespace decaykit::cli
