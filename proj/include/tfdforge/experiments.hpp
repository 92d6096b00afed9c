#pragma once

#include "tfdforge/doubled.hpp"
#include "tfdforge/forging.hpp"
#include "tfdforge/models.hpp"
#include "tfdforge/optimize.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tfd {

struct ExperimentConfig {
    HubbardParams model;
    std::vector<FrequencySource> sources{FrequencySource::MeanField};
    std::vector<double> u_values{0.0};
    double beta_min = 0.05;
    double beta_max = 5.0;
    int beta_steps = 50;
    double beta = 1.26; ///< target temperature for vqe and spectrum
    int layers = 1;
    int rank = 0;       ///< 0 means full rank
    int maxiter = 200;
    int restarts = 5;
    std::uint64_t seed = 1234;
    bool validate = true;
    std::string out;

    void check() const;
    std::vector<double> beta_grid() const;
    OptimizerConfig optimizer() const;
};

/// Applies "key = value" lines on top of base. Blank lines and lines starting
/// with '#' are ignored unless they carry an embedded "# config:" prefix.
ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {});

/// Reads a plain key-value file, a CSV produced by this tool (embedded
/// "# config:" lines) or a JSON record with a "config" object.
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// One "key = value" per line, keys in a fixed order.
std::string config_to_text(const ExperimentConfig& cfg);

/// Ground state of a doubled-space Hamiltonian: dense up to kGroundDenseDim, Lanczos above.
inline constexpr std::size_t kGroundDenseDim = 1024;
Statevector ground_vector(const SparseOperator& h, double* energy = nullptr);

/// Mode frequencies of the given source at interaction U (zero-temperature mean field).
ModeFrequencies resolve_frequencies(const HubbardParams& p, FrequencySource source);

struct OverlapRow {
    double beta;
    double u;
    FrequencySource source;
    double overlap;
    double gs_energy;
};

/// Rows ordered by U, then frequency source, then beta.
std::vector<OverlapRow> overlap_sweep(const ExperimentConfig& cfg);
void write_overlap_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<OverlapRow>& rows);

struct VqeOutcome {
    double u = 0.0;
    FrequencySource source = FrequencySource::MeanField;
    HVALayout layout;
    OptimizationResult opt;
    std::vector<double> energies; ///< estimators at theta_opt, basis order
    Eigen::VectorXd lambda;
    bool validated = false;
    double overlap_psi_tfd = 0.0;
    double overlap_gs_tfd = 0.0;
    double gs_energy = 0.0;
    std::vector<double> exact_spectrum;
};

/// Forged VQE at cfg.beta for the first U value and the first frequency source.
VqeOutcome run_vqe(const ExperimentConfig& cfg);
void write_vqe_json(std::ostream& os, const ExperimentConfig& cfg, const VqeOutcome& r);

void write_spectrum_csv(std::ostream& os, const ExperimentConfig& cfg, const VqeOutcome& r);

void write_meanfield_bands_csv(std::ostream& os, const ExperimentConfig& cfg);

} // namespace tfd
