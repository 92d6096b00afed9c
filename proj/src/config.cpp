#include "tfdforge/experiments.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tfd {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    if (value.starts_with('+')) value.remove_prefix(1);
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ContractViolation("config: invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ContractViolation("config: invalid boolean '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

std::string format_double(double x) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += f(xs[i]);
    }
    return out;
}

void apply_key(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "n") cfg.model.n_sites = parse_number<int>(key, value);
    else if (key == "t") cfg.model.t = parse_number<double>(key, value);
    else if (key == "eps0") cfg.model.eps0 = parse_number<double>(key, value);
    else if (key == "u") {
        cfg.u_values.clear();
        for (const auto& item : split_list(value)) cfg.u_values.push_back(parse_number<double>(key, item));
    } else if (key == "frequencies") {
        cfg.sources.clear();
        for (const auto& item : split_list(value)) cfg.sources.push_back(parse_frequency_source(item));
    } else if (key == "beta_min") cfg.beta_min = parse_number<double>(key, value);
    else if (key == "beta_max") cfg.beta_max = parse_number<double>(key, value);
    else if (key == "beta_steps") cfg.beta_steps = parse_number<int>(key, value);
    else if (key == "beta") cfg.beta = parse_number<double>(key, value);
    else if (key == "layers") cfg.layers = parse_number<int>(key, value);
    else if (key == "rank") cfg.rank = parse_number<int>(key, value);
    else if (key == "maxiter") cfg.maxiter = parse_number<int>(key, value);
    else if (key == "restarts") cfg.restarts = parse_number<int>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "validate") cfg.validate = parse_bool(key, value);
    else if (key == "out") cfg.out = std::string(value);
    else throw ContractViolation("config: unknown key '" + std::string(key) + "'");
}

} // namespace

void ExperimentConfig::check() const {
    model.validate();
    require(!sources.empty(), "config: at least one frequency source required");
    require(!u_values.empty(), "config: at least one U value required");
    require(beta_min >= 0.05, "config: beta_min must be >= 0.05");
    require(beta_max >= beta_min, "config: beta_max must be >= beta_min");
    require(beta_steps >= 2, "config: beta_steps must be >= 2");
    require(beta > 0.0, "config: beta must be positive");
    require(layers >= 1, "config: layers must be >= 1");
    require(rank >= 0 && rank <= (1 << std::min(model.n_sites, 30)), "config: rank out of range");
    require(maxiter >= 0, "config: maxiter must be non-negative");
    require(restarts >= 1, "config: restarts must be >= 1");
}

std::vector<double> ExperimentConfig::beta_grid() const {
    std::vector<double> grid(static_cast<std::size_t>(beta_steps));
    for (int i = 0; i < beta_steps; ++i)
        grid[static_cast<std::size_t>(i)] = beta_min + (beta_max - beta_min) * i / (beta_steps - 1);
    return grid;
}

OptimizerConfig ExperimentConfig::optimizer() const {
    OptimizerConfig o;
    o.max_iterations = maxiter;
    o.restarts = restarts;
    o.seed = seed;
    return o;
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base) {
    constexpr std::string_view embedded = "# config:";
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = trim(raw);
        if (line.starts_with(embedded)) line = trim(line.substr(embedded.size()));
        else if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ContractViolation("config: expected 'key = value', got '" + raw + "'");
        apply_key(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const auto j = nlohmann::json::parse(text);
        if (!j.contains("config") || !j["config"].is_object())
            throw ContractViolation("config: JSON input has no 'config' object");
        std::string kv;
        for (const auto& [key, value] : j["config"].items())
            kv += key + " = " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
        return parse_config_text(kv, std::move(base));
    }

    // CSV outputs: only the embedded config lines are read.
    if (text.find("# config:") != std::string::npos) {
        std::string kv;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);)
            if (trim(line).starts_with("# config:")) kv += line + "\n";
        return parse_config_text(kv, std::move(base));
    }
    return parse_config_text(text, std::move(base));
}

std::string config_to_text(const ExperimentConfig& cfg) {
    std::string s;
    auto line = [&](const char* key, const std::string& value) { s += std::string(key) + " = " + value + "\n"; };
    line("n", std::to_string(cfg.model.n_sites));
    line("t", format_double(cfg.model.t));
    line("eps0", format_double(cfg.model.eps0));
    line("u", join(cfg.u_values, format_double));
    line("frequencies", join(cfg.sources, [](FrequencySource x) { return to_string(x); }));
    line("beta_min", format_double(cfg.beta_min));
    line("beta_max", format_double(cfg.beta_max));
    line("beta_steps", std::to_string(cfg.beta_steps));
    line("beta", format_double(cfg.beta));
    line("layers", std::to_string(cfg.layers));
    line("rank", std::to_string(cfg.rank));
    line("maxiter", std::to_string(cfg.maxiter));
    line("restarts", std::to_string(cfg.restarts));
    line("seed", std::to_string(cfg.seed));
    line("validate", cfg.validate ? "true" : "false");
    return s;
}

} // namespace tfd
