#include "tfdforge/experiments.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

struct Flags {
    std::optional<int> n;
    std::optional<double> t, eps0, beta_min, beta_max, beta;
    std::vector<double> u;
    std::optional<int> beta_steps, layers, rank, maxiter, restarts;
    std::optional<std::string> frequencies;
    std::optional<std::uint64_t> seed;
    std::optional<bool> validate;
    std::string out;
    std::string config;
};

void add_shared(CLI::App* cmd, Flags& f) {
    cmd->add_option("--n", f.n, "number of lattice sites N (2N qubits in the doubled space)");
    cmd->add_option("--t", f.t, "hopping amplitude");
    cmd->add_option("--eps0", f.eps0, "on-site energy");
    cmd->add_option("--u", f.u, "interaction strength (repeatable)");
    cmd->add_option("--beta-min", f.beta_min, "smallest beta of the grid");
    cmd->add_option("--beta-max", f.beta_max, "largest beta of the grid");
    cmd->add_option("--beta-steps", f.beta_steps, "number of grid points");
    cmd->add_option("--beta", f.beta, "target beta for vqe and spectrum");
    cmd->add_option("--frequencies", f.frequencies, "free, meanfield or a comma list of both");
    cmd->add_option("--layers", f.layers, "ansatz layers");
    cmd->add_option("--rank", f.rank, "Schmidt rank K (0 = full)");
    cmd->add_option("--seed", f.seed, "optimizer seed");
    cmd->add_option("--maxiter", f.maxiter, "optimizer iteration cap");
    cmd->add_option("--restarts", f.restarts, "optimizer restarts");
    cmd->add_flag("--validate,!--no-validate", f.validate, "compute exact TFD overlaps");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--config", f.config, "config file, or an earlier output of this tool");
}

tfd::ExperimentConfig resolve(const Flags& f) {
    tfd::ExperimentConfig cfg;
    if (!f.config.empty()) cfg = tfd::load_config_file(f.config, cfg);
    if (f.n) cfg.model.n_sites = *f.n;
    if (f.t) cfg.model.t = *f.t;
    if (f.eps0) cfg.model.eps0 = *f.eps0;
    if (!f.u.empty()) cfg.u_values = f.u;
    if (f.beta_min) cfg.beta_min = *f.beta_min;
    if (f.beta_max) cfg.beta_max = *f.beta_max;
    if (f.beta_steps) cfg.beta_steps = *f.beta_steps;
    if (f.beta) cfg.beta = *f.beta;
    if (f.frequencies) cfg = tfd::parse_config_text("frequencies = " + *f.frequencies, cfg);
    if (f.layers) cfg.layers = *f.layers;
    if (f.rank) cfg.rank = *f.rank;
    if (f.seed) cfg.seed = *f.seed;
    if (f.maxiter) cfg.maxiter = *f.maxiter;
    if (f.restarts) cfg.restarts = *f.restarts;
    if (f.validate) cfg.validate = *f.validate;
    if (!f.out.empty()) cfg.out = f.out;
    cfg.check();
    return cfg;
}

template <class Write>
void emit(const tfd::ExperimentConfig& cfg, Write write) {
    if (cfg.out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream os(cfg.out);
    if (!os) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
    write(os);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermofield double preparation by entanglement forging"};
    app.require_subcommand(1);

    Flags f;
    auto* sweep = app.add_subcommand("overlap-sweep", "GS(H_tot) vs exact TFD overlap over a beta grid (CSV)");
    auto* vqe = app.add_subcommand("vqe", "forged variational TFD preparation (JSON)");
    auto* spectrum = app.add_subcommand("spectrum", "exact vs variational spectrum (CSV)");
    auto* bands = app.add_subcommand("meanfield-bands", "free and mean-field mode frequencies (CSV)");
    for (auto* cmd : {sweep, vqe, spectrum, bands}) add_shared(cmd, f);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = resolve(f);
        if (sweep->parsed()) {
            const auto rows = tfd::overlap_sweep(cfg);
            emit(cfg, [&](std::ostream& os) { tfd::write_overlap_csv(os, cfg, rows); });
        } else if (bands->parsed()) {
            emit(cfg, [&](std::ostream& os) { tfd::write_meanfield_bands_csv(os, cfg); });
        } else {
            const auto r = tfd::run_vqe(cfg);
            if (vqe->parsed()) emit(cfg, [&](std::ostream& os) { tfd::write_vqe_json(os, cfg, r); });
            else emit(cfg, [&](std::ostream& os) { tfd::write_spectrum_csv(os, cfg, r); });
            if (!r.opt.converged) {
                std::cerr << "warning: optimizer did not converge (" << r.opt.stop_reason << ")\n";
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
