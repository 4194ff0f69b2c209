#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ckg/solutions.hpp"

namespace ckg {

enum class ICType { single_soliton, collision_1c, collision_3c, from_file };

/// Optional white-noise perturbation of the sampled initial data. Each
/// selected field is perturbed independently at its own signal power; the
/// per-field seed is `seed` plus the field's slot index in the order
/// psi0_1..psi0_N, psi1_1..psi1_N, q0.
struct NoiseConfig {
    double snr_db = 50.0;
    std::uint64_t seed = 0;
    bool on_psi0 = true;
    bool on_psi1 = true;
    bool on_q0 = true;
};

/// Fully validated description of one run. Produced by parse_config; the
/// runner consumes it as-is.
struct RunConfig {
    double a = 0.0;
    double b = 0.0;
    int M = 0;
    double tau = 0.0;
    double t_final = 0.0;
    int n_components = 1;
    bool dealias = false;

    ICType ic_type = ICType::single_soliton;
    SolitonSpec soliton;     // single_soliton recipe
    double x0 = 0.0;         // collision dislocation
    std::string ic_file;     // from_file recipe

    std::optional<NoiseConfig> noise;

    std::vector<double> snapshot_times; // each an exact step multiple
    long energy_every = 0;              // steps between diagnostic rows; 0 = off
    std::optional<SolitonSpec> error_vs_exact;

    std::string output_dir; // may be empty; the CLI resolves the final path

    long steps() const;                  // t_final / tau, exact by validation
    long step_of(double t) const;        // t / tau, exact by validation
};

/// True when t/tau sits within half an ulp of a whole number of steps (the
/// rule every time-like config value must satisfy). Writes the count to
/// *steps when provided.
bool exact_step_count(double t, double tau, long* steps = nullptr);

/// Parse and validate a config document (INI-style sections; see README for
/// the schema). Throws ConfigError with a 1-based line number and the
/// offending key on any violation.
RunConfig parse_config(const std::string& text);

/// parse_config over the contents of a file.
RunConfig load_config(const std::string& path);

} // namespace ckg
