#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qduet/dynamics.hpp"
#include "qduet/entanglement.hpp"
#include "qduet/hilbert.hpp"
#include "qduet/params.hpp"

namespace qduet {

struct ParamSet {
    std::string label;
    SystemParams params;
};

// One experiment: a coupling layout, a named initial state, parameters and a
// time grid. Figure presets pin all of these; multi-curve figures carry one
// ParamSet per curve.
struct ScenarioSpec {
    std::string figure;  // preset id, empty for custom runs
    CouplingConfig config = CouplingConfig::AtomMediated;
    std::string initial = "w1";
    SystemParams params;
    std::vector<ParamSet> sets;  // non-empty only for multi-curve figures
    double t_max = 20.0;
    int t_points = 2001;
};

const std::vector<std::string>& figure_ids();

// Pinned parameters for fig2a..fig8. Throws std::invalid_argument on an
// unknown id.
ScenarioSpec figure_preset(const std::string& id);

// Column-labelled numeric table, row per grid time.
struct ObservableTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 if absent
    std::vector<double> series(const std::string& name) const;
};

// Core pipeline: propagate psi0 under M and tabulate
// t, norm, P_<frame state>..., C_AB, C_ab, N_AB, N_ab.
// C_ab is NaN outside single-excitation manifolds (the mode pair is no
// longer two qubits there; the figures use negativities instead). Measures
// are taken from the unnormalized reduced matrices so that decay shows.
ObservableTable observable_table(const Matrix& M, const StateVector& psi0,
                                 CouplingConfig config,
                                 const SystemParams& params,
                                 const std::vector<double>& times);

// Runs the spec (all parameter sets, `_label`-suffixed columns when several)
// and returns the merged table.
ObservableTable run_scenario(const ScenarioSpec& spec);

// Population fraction of `initial` held by the four stationary states of the
// resonant equal-coupling atom-mediated double-excitation sector.
// Requires config A, g_a = g_b, delta = 0 and a two-quantum manifold.
double trapped_fraction(const StateVector& initial, CouplingConfig config,
                        const SystemParams& params);

struct TransferReport {
    double max_fidelity = 0.0;
    double time_of_max = 0.0;
};

// Squared overlap of the propagated state with `target`, maximized on the
// grid; insensitive to global phase.
TransferReport transfer_report(const StateVector& initial,
                               const StateVector& target,
                               CouplingConfig config, const SystemParams& params,
                               const std::vector<double>& times);

struct Peak {
    std::size_t index = 0;
    double time = 0.0;
    double value = 0.0;
};

// Local maxima above `floor`; the left boundary counts if it dominates its
// neighbour, the right boundary never does.
std::vector<Peak> find_peaks(const std::vector<double>& times,
                             const std::vector<double>& values, double floor);

}  // namespace qduet
