#include "tfdforge/experiments.hpp"

#include "tfdforge/solver.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>

namespace tfd {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_config_header(std::ostream& os, const ExperimentConfig& cfg) {
    std::istringstream in(config_to_text(cfg));
    for (std::string line; std::getline(in, line);) os << "# config: " << line << '\n';
}

HubbardParams with_u(const HubbardParams& p, double u) {
    HubbardParams q = p;
    q.U = u;
    return q;
}

void check_qubits(int n_sites) {
    if (2 * n_sites > kDefaultQubitCap)
        throw ResourceError("N = " + std::to_string(n_sites) + " needs " + std::to_string(2 * n_sites) +
                            " qubits, above the limit of " + std::to_string(kDefaultQubitCap) + " qubits");
}

} // namespace

Statevector ground_vector(const SparseOperator& h, double* energy) {
    if (h.dim() <= kGroundDenseDim) {
        const auto eig = eig_full(h);
        if (energy) *energy = eig.energies.front();
        return eig.vectors.col(0);
    }
    const auto gs = ground_state(h);
    if (energy) *energy = gs.energy;
    return gs.vector;
}

ModeFrequencies resolve_frequencies(const HubbardParams& p, FrequencySource source) {
    if (source == FrequencySource::Free) return free_frequencies(p);
    return mean_field_frequencies(p).frequencies;
}

std::vector<OverlapRow> overlap_sweep(const ExperimentConfig& cfg) {
    cfg.check();
    check_qubits(cfg.model.n_sites);
    const auto betas = cfg.beta_grid();

    struct Point {
        double u;
        FrequencySource source;
        double beta;
    };
    std::vector<Point> points;
    for (double u : cfg.u_values)
        for (auto s : cfg.sources)
            for (double b : betas) points.push_back({u, s, b});

    std::vector<OverlapRow> rows(points.size());
    std::exception_ptr failure;
    const auto n_points = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n_points; ++i) {
        try {
            const auto& pt = points[static_cast<std::size_t>(i)];
            const auto p = with_u(cfg.model, pt.u);
            const auto h = hubbard_momentum(p);
            const auto tot = build_h_total(h, resolve_frequencies(p, pt.source), pt.beta);
            double e0 = 0.0;
            const Statevector gs = ground_vector(tot.op, &e0);
            const Statevector tfd = exact_tfd(build_sparse(h), pt.beta);
            rows[static_cast<std::size_t>(i)] = {pt.beta, pt.u, pt.source, state_overlap(gs, tfd), e0};
        } catch (...) {
#pragma omp critical(sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

void write_overlap_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<OverlapRow>& rows) {
    write_config_header(os, cfg);
    os << "beta,u,freq_source,overlap_gs_tfd,gs_energy\n";
    for (const auto& r : rows)
        os << fmt(r.beta) << ',' << fmt(r.u) << ',' << to_string(r.source) << ',' << fmt(r.overlap) << ','
           << fmt(r.gs_energy) << '\n';
}

VqeOutcome run_vqe(const ExperimentConfig& cfg) {
    cfg.check();
    check_qubits(cfg.model.n_sites);
    VqeOutcome r;
    r.u = cfg.u_values.front();
    r.source = cfg.sources.front();

    const auto p = with_u(cfg.model, r.u);
    const auto h = hubbard_momentum(p);
    const auto tot = build_h_total(h, resolve_frequencies(p, r.source), cfg.beta);

    const auto paulis = merge_like(jordan_wigner(h));
    const auto h2 = merge_like(jordan_wigner(hubbard_momentum_quadratic(p)));

    ForgedProblem problem;
    problem.decomp = decompose_lr(tot);
    problem.layout = partition_commuting(paulis, h2, cfg.layers);
    problem.system = build_sparse(paulis, p.n_sites);
    problem.beta = cfg.beta;
    problem.rank = cfg.rank;

    r.opt = optimize_restarts([&](const Eigen::VectorXd& th) { return forged_cost(problem, th); },
                              problem.layout.n_params(), cfg.optimizer());
    const auto ev = evaluate_forged(problem, r.opt.theta);
    r.layout = problem.layout;
    r.energies = ev.energies;
    r.lambda = ev.weights.lambda;

    if (cfg.validate) {
        const Statevector psi = assemble_forged_state(problem.layout, r.opt.theta, ev.weights);
        const Statevector tfd = exact_tfd(problem.system, cfg.beta);
        const Statevector gs = ground_vector(tot.op, &r.gs_energy);
        r.overlap_psi_tfd = state_overlap(psi, tfd);
        r.overlap_gs_tfd = state_overlap(gs, tfd);
        r.exact_spectrum = eig_full(problem.system).energies;
        r.validated = true;
    }
    return r;
}

void write_vqe_json(std::ostream& os, const ExperimentConfig& cfg, const VqeOutcome& r) {
    using nlohmann::ordered_json;
    ordered_json config = ordered_json::object();
    std::istringstream in(config_to_text(cfg));
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find(" = ");
        config[line.substr(0, eq)] = line.substr(eq + 3);
    }

    ordered_json j;
    j["config"] = config;
    j["seed"] = r.opt.seed;
    j["u"] = r.u;
    j["freq_source"] = to_string(r.source);
    j["beta"] = cfg.beta;
    j["n_sets"] = r.layout.n_sets();
    j["converged"] = r.opt.converged;
    j["stop_reason"] = r.opt.stop_reason;
    j["iterations"] = r.opt.iterations;
    j["restart"] = r.opt.restart;
    j["theta_opt"] = std::vector<double>(r.opt.theta.data(), r.opt.theta.data() + r.opt.theta.size());
    j["cost_history"] = r.opt.history;
    j["cost"] = r.opt.cost;
    j["energies"] = r.energies;
    j["schmidt_weights"] = std::vector<double>(r.lambda.data(), r.lambda.data() + r.lambda.size());
    if (r.validated) {
        j["overlap_psi_tfd"] = r.overlap_psi_tfd;
        j["overlap_gs_tfd"] = r.overlap_gs_tfd;
        j["gs_energy"] = r.gs_energy;
        j["exact_spectrum"] = r.exact_spectrum;
    }
    j["timing"] = {{"wall_seconds", r.opt.wall_seconds}};
    os << j.dump(2) << '\n';
}

void write_spectrum_csv(std::ostream& os, const ExperimentConfig& cfg, const VqeOutcome& r) {
    std::vector<double> exact = r.exact_spectrum;
    if (exact.empty()) {
        const auto p = with_u(cfg.model, r.u);
        exact = eig_full(build_sparse(hubbard_momentum(p))).energies;
    }
    std::vector<double> variational = r.energies;
    std::sort(variational.begin(), variational.end());
    require(exact.size() == variational.size(), "spectrum: size mismatch");

    write_config_header(os, cfg);
    os << "m,e_exact,e_variational\n";
    for (std::size_t m = 0; m < exact.size(); ++m) os << m << ',' << fmt(exact[m]) << ',' << fmt(variational[m]) << '\n';
}

void write_meanfield_bands_csv(std::ostream& os, const ExperimentConfig& cfg) {
    cfg.check();
    write_config_header(os, cfg);
    os << "k,omega_free,omega_meanfield,U\n";
    for (double u : cfg.u_values) {
        const auto p = with_u(cfg.model, u);
        const auto free = free_frequencies(p);
        const auto mf = mean_field_frequencies(p);
        for (std::size_t k = 0; k < free.size(); ++k)
            os << k << ',' << fmt(free.values[k]) << ',' << fmt(mf.frequencies.values[k]) << ',' << fmt(u) << '\n';
    }
}

} // namespace tfd
