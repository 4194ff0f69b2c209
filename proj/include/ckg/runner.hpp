#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ckg/config.hpp"
#include "ckg/diagnostics.hpp"

namespace ckg {

inline constexpr const char* ARTIFACT_VERSION = "1.0.0";

struct Snapshot {
    double t;
    std::vector<std::vector<double>> rows; // psi_1..psi_N, Q; each M+1 long
};

/// Everything one run produces, gathered in memory. `status` is the manifest
/// status string: "completed", "blow-up at step N", or "resonance".
struct RunOutcome {
    std::string status;
    long final_step = 0;
    double final_time = 0.0;
    std::vector<Snapshot> snapshots;
    std::vector<EnergySample> energy_series;
    std::vector<ErrorSample> error_series;
    double final_error = std::numeric_limits<double>::quiet_NaN(); // set when a
                                                                   // reference is configured
    std::vector<std::pair<std::string, double>> noise_sigmas; // per perturbed field
    std::string wall_start;
    std::string wall_end;
    std::string backend;

    bool completed() const { return status == "completed"; }
};

/// Execute a run without touching the filesystem.
RunOutcome run_in_memory(const RunConfig& cfg);

/// Execute a run and write its artifacts into cfg.output_dir (created if
/// needed): snapshot_t<t>.csv per snapshot time, energy.csv / error.csv when
/// sampled, and manifest.txt written exactly once, last, whatever the
/// termination status. Numeric output uses %.17g so a rerun of the same
/// config and seed is bit-identical.
RunOutcome run(const RunConfig& cfg);

enum class StudyAxis { space, time };

struct StudyRow {
    double level;   // h (space) or tau (time)
    double e_final; // e(t_final); NaN if the level failed
    double order;   // log2 ratio to the previous level (time axis); NaN otherwise
    std::string status;
};

/// One run per refinement level, measuring e(t_final) against
/// base.error_vs_exact. Space levels set h = level (M must come out an even
/// integer); time levels set tau = level. A level that fails to run is
/// recorded with its error status and the study continues.
std::vector<StudyRow> convergence_study(const RunConfig& base, StudyAxis axis,
                                        const std::vector<double>& levels);

/// Write the three-block accuracy table (spatial, temporal, energy) with the
/// reference values and relative deviations alongside. Empty inputs leave a
/// flagged gap instead of a block.
void emit_table1(const std::string& path, const std::vector<StudyRow>& space_rows,
                 const std::vector<StudyRow>& time_rows,
                 const std::vector<EnergySample>& energy_rows);

struct PresetInfo {
    std::string name;
    std::string summary;
};

/// The built-in experiments, in listing order.
const std::vector<PresetInfo>& preset_list();

/// The run configuration a single-run preset executes (fig2, fig3, fig4,
/// table1-energy) or the base configuration of a composite preset
/// (table1-space, table1-time, fig1-noise). output_dir is left empty.
RunConfig preset_config(const std::string& name);

/// Execute a named preset with all file outputs under output_root. Returns
/// true iff every sub-run completed.
bool run_preset(const std::string& name, const std::string& output_root);

} // namespace ckg
