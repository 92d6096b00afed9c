#pragma once

#include "tfdforge/fock.hpp"

#include <string>
#include <vector>

namespace tfd {

/// Spinless Hubbard ring with periodic boundary conditions.
struct HubbardParams {
    int n_sites = 4;
    double t = 1.0;
    double eps0 = 0.0;
    double U = 0.0;

    void validate() const;
};

enum class FrequencySource { Free, MeanField };

std::string to_string(FrequencySource s);
FrequencySource parse_frequency_source(const std::string& s);

struct ModeFrequencies {
    std::vector<double> values;
    FrequencySource source = FrequencySource::Free;

    std::size_t size() const noexcept { return values.size(); }
};

/// eps0 sum n_i - t sum (a+_i a_{i+1} + h.c.) + U sum n_i n_{i+1}
FermionOperator hubbard_real(const HubbardParams& p);

/// Same ring after the Fourier transform: sum_k w_k n_k plus the
/// momentum-exchange quartic term (U/N) sum e^{-2 pi i q/N} a+_{k+q} a_k a+_{p-q} a_p.
FermionOperator hubbard_momentum(const HubbardParams& p);

/// Only the diagonal quadratic part sum_k w_k n_k of hubbard_momentum.
FermionOperator hubbard_momentum_quadratic(const HubbardParams& p);

/// w_k = eps0 - 2 t cos(2 pi k / N)
ModeFrequencies free_frequencies(const HubbardParams& p);

/// Expectation of the reduced (translation-invariant) mean-field Hamiltonian,
/// constants included, in the product state given by the occupation pattern.
double mean_field_energy(const FockState& occupation, const HubbardParams& p);

/// w_k + 2 U rho - 2 U alpha cos(2 pi k / N)
std::vector<double> shifted_frequencies(const HubbardParams& p, double density, double cos_moment);

struct MeanFieldResult {
    ModeFrequencies frequencies; ///< source = MeanField
    double density = 0.0;        ///< rho = N_e / N
    double cos_moment = 0.0;     ///< alpha = (1/N) sum_p cos(2 pi p / N) <n_p>
    int n_particles = 0;
    FockState occupation;
    double energy = 0.0;
    bool converged = true; ///< false if some filling's fixed-point iteration hit the cap
    bool brute_force = false; ///< true if the exhaustive scan supplied or confirmed the minimum
};

struct MeanFieldOptions {
    int brute_force_max_sites = 12;
    int max_iterations = 100;
};

/// Filling search: for every N_e, fill the N_e lowest levels and iterate
/// (recompute shifted levels, refill) until the pattern repeats. The lowest
/// energy pattern over all N_e wins. Up to brute_force_max_sites the
/// exhaustive 2^N scan is run as well and the global minimum is kept.
/// Ties go to the lowest bitmask.
MeanFieldResult mean_field_frequencies(const HubbardParams& p, const MeanFieldOptions& opts = {});

} // namespace tfd
