#include "tfdforge/models.hpp"

#include "tfdforge/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace tfd {

namespace {

double cos_k(int k, int n) { return std::cos(2.0 * std::numbers::pi * k / n); }

std::vector<double> cosines(int n) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = cos_k(k, n);
    return c;
}

/// Occupies the n_fill lowest levels; equal levels are taken in index order.
std::uint64_t fill_lowest(const std::vector<double>& levels, int n_fill) {
    std::vector<int> order(levels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return levels[static_cast<std::size_t>(a)] < levels[static_cast<std::size_t>(b)];
    });
    std::uint64_t bits = 0;
    for (int i = 0; i < n_fill; ++i) bits |= std::uint64_t{1} << order[static_cast<std::size_t>(i)];
    return bits;
}

void moments(std::uint64_t bits, int n, double& density, double& cos_moment) {
    const auto c = cosines(n);
    double count = 0.0, cs = 0.0;
    for (int k = 0; k < n; ++k) {
        if ((bits >> k) & 1u) {
            count += 1.0;
            cs += c[static_cast<std::size_t>(k)];
        }
    }
    density = count / n;
    cos_moment = cs / n;
}

} // namespace

void HubbardParams::validate() const {
    require(n_sites >= 2, "HubbardParams: n_sites must be >= 2");
    require(n_sites <= 63, "HubbardParams: n_sites must be <= 63");
    require(std::isfinite(t) && std::isfinite(eps0) && std::isfinite(U), "HubbardParams: parameters must be finite");
}

std::string to_string(FrequencySource s) { return s == FrequencySource::Free ? "free" : "meanfield"; }

FrequencySource parse_frequency_source(const std::string& s) {
    if (s == "free") return FrequencySource::Free;
    if (s == "meanfield") return FrequencySource::MeanField;
    throw ContractViolation("frequency source must be 'free' or 'meanfield', got '" + s + "'");
}

FermionOperator hubbard_real(const HubbardParams& p) {
    p.validate();
    const int n = p.n_sites;
    FermionOperator h(n);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (p.eps0 != 0.0) h.add(p.eps0, {create(i), annihilate(i)});
        if (p.t != 0.0) {
            h.add(-p.t, {create(i), annihilate(j)});
            h.add(-p.t, {create(j), annihilate(i)});
        }
        if (p.U != 0.0) h.add(p.U, {create(i), annihilate(i), create(j), annihilate(j)});
    }
    return h;
}

FermionOperator hubbard_momentum_quadratic(const HubbardParams& p) {
    p.validate();
    const auto w = free_frequencies(p);
    FermionOperator h(p.n_sites);
    for (int k = 0; k < p.n_sites; ++k) h.add(w.values[static_cast<std::size_t>(k)], {create(k), annihilate(k)});
    return h;
}

FermionOperator hubbard_momentum(const HubbardParams& p) {
    FermionOperator h = hubbard_momentum_quadratic(p);
    if (p.U == 0.0) return h;
    const int n = p.n_sites;
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
            for (int q = 0; q < n; ++q) {
                const double angle = -2.0 * std::numbers::pi * q / n;
                const cplx c = (p.U / n) * cplx{std::cos(angle), std::sin(angle)};
                h.add(c, {create((k + q) % n), annihilate(k), create((m - q + n) % n), annihilate(m)});
            }
    return h;
}

ModeFrequencies free_frequencies(const HubbardParams& p) {
    p.validate();
    ModeFrequencies w{std::vector<double>(static_cast<std::size_t>(p.n_sites)), FrequencySource::Free};
    for (int k = 0; k < p.n_sites; ++k) w.values[static_cast<std::size_t>(k)] = p.eps0 - 2.0 * p.t * cos_k(k, p.n_sites);
    return w;
}

double mean_field_energy(const FockState& occupation, const HubbardParams& p) {
    p.validate();
    require(occupation.n_modes() == p.n_sites, "mean_field_energy: occupation must span n_sites modes");
    const auto w = free_frequencies(p);
    return kernels::occupation_energy(w.values, cosines(p.n_sites), p.U, occupation.bits());
}

std::vector<double> shifted_frequencies(const HubbardParams& p, double density, double cos_moment) {
    auto w = free_frequencies(p).values;
    for (int k = 0; k < p.n_sites; ++k)
        w[static_cast<std::size_t>(k)] += 2.0 * p.U * density - 2.0 * p.U * cos_moment * cos_k(k, p.n_sites);
    return w;
}

MeanFieldResult mean_field_frequencies(const HubbardParams& p, const MeanFieldOptions& opts) {
    p.validate();
    const int n = p.n_sites;
    const auto free = free_frequencies(p).values;
    const auto cs = cosines(n);

    kernels::ScanResult best{kernels::occupation_energy(free, cs, p.U, 0), 0};
    auto consider = [&](std::uint64_t bits) {
        const kernels::ScanResult cand{kernels::occupation_energy(free, cs, p.U, bits), bits};
        if (cand.energy < best.energy || (cand.energy == best.energy && cand.bits < best.bits)) best = cand;
    };

    bool converged = true;
    for (int n_fill = 0; n_fill <= n; ++n_fill) {
        std::uint64_t bits = fill_lowest(free, n_fill);
        std::set<std::uint64_t> seen;
        bool repeated = false;
        for (int it = 0; it < opts.max_iterations; ++it) {
            consider(bits);
            if (!seen.insert(bits).second) {
                repeated = true;
                break;
            }
            double rho = 0.0, alpha = 0.0;
            moments(bits, n, rho, alpha);
            bits = fill_lowest(shifted_frequencies(p, rho, alpha), n_fill);
        }
        converged = converged && repeated;
    }

    MeanFieldResult out;
    if (n <= opts.brute_force_max_sites) {
        const auto scan = kernels::occupation_scan_parallel(free, p.U);
        if (scan.energy < best.energy || (scan.energy == best.energy && scan.bits < best.bits)) best = scan;
        out.brute_force = true;
    }
    out.converged = converged;
    out.occupation = FockState(best.bits, n);
    out.energy = best.energy;
    out.n_particles = out.occupation.particle_count();
    moments(best.bits, n, out.density, out.cos_moment);
    out.frequencies = {shifted_frequencies(p, out.density, out.cos_moment), FrequencySource::MeanField};
    return out;
}

} // namespace tfd
