#include "spme/run_config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace spme::config {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    try {
        auto take = [&](const char* key) -> std::string* {
            auto it = kv.find(key);
            return it == kv.end() ? nullptr : &it->second;
        };
        auto real = [&](const char* key, double& dst) {
            if (auto* v = take(key)) dst = std::stod(*v);
        };
        auto integer = [&](const char* key, int& dst) {
            if (auto* v = take(key)) dst = std::stoi(*v);
        };
        auto str = [&](const char* key, std::string& dst) {
            if (auto* v = take(key)) dst = *v;
        };

        str("model.kind", cfg.graph_kind);
        real("model.rho", cfg.rho);
        real("model.delta", cfg.delta);
        real("model.shift", cfg.shift);
        real("model.a", cfg.a);
        real("model.alpha1", cfg.alpha1);
        real("model.alpha2", cfg.alpha2);
        real("model.alpha", cfg.alpha);
        real("model.coefficient", cfg.coefficient);
        real("model.x_c", cfg.x_c);
        if (auto* v = take("noise.mu")) cfg.mu = parse_list(*v);
        if (auto* v = take("noise.N")) {
            int n_modes = std::stoi(*v);
            if (n_modes != static_cast<int>(cfg.mu.size())) {
                throw ConfigError("noise.N does not match the length of noise.mu");
            }
        }
        integer("grid.n", cfg.n);
        real("time.dt", cfg.dt);
        real("time.lambda", cfg.lambda);
        real("time.T", cfg.horizon);
        str("init.kind", cfg.init_kind);
        integer("init.mode", cfg.init_mode);
        real("init.amplitude", cfg.init_amplitude);
        real("extinction.epsilon", cfg.epsilon_ext);
        if (auto* v = take("extinction.horizons")) cfg.horizons = parse_list(*v);
        integer("extinction.trajectories", cfg.trajectories);
        if (auto* v = take("seed")) cfg.seed = std::stoull(*v);
        str("output.dir", cfg.out_dir);
        integer("output.record_stride", cfg.record_stride);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed value: ") + e.what());
    }

    // schema validation
    static const std::map<std::string, int> known_kinds{
        {"sign", 0}, {"heaviside", 0}, {"stefan", 0},
        {"power_sign", 0}, {"coercive_sign", 0}};
    if (!known_kinds.count(cfg.graph_kind)) {
        throw ConfigError("unknown model.kind: " + cfg.graph_kind);
    }
    if (cfg.init_kind != "mode" && cfg.init_kind != "constant") {
        throw ConfigError("unknown init.kind: " + cfg.init_kind);
    }
    if (cfg.n < 2) throw ConfigError("grid.n must be >= 2");
    if (!(cfg.dt > 0.0)) throw ConfigError("time.dt must be positive");
    if (!(cfg.lambda > 0.0)) throw ConfigError("time.lambda must be positive");
    if (!(cfg.horizon > 0.0)) throw ConfigError("time.T must be positive");
    if (!(cfg.epsilon_ext > 0.0)) throw ConfigError("extinction.epsilon must be positive");
    if (cfg.trajectories < 1) throw ConfigError("extinction.trajectories must be >= 1");
    if (cfg.record_stride < 1) throw ConfigError("output.record_stride must be >= 1");
    for (double m : cfg.mu) {
        if (!(m > 0.0)) throw ConfigError("noise.mu entries must be positive");
    }
    for (double hz : cfg.horizons) {
        if (!(hz > 0.0)) throw ConfigError("extinction.horizons must be positive");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

graphs::GraphSpec RunConfig::graph() const {
    if (graph_kind == "sign") return graphs::GraphSpec::sign(rho);
    if (graph_kind == "heaviside") return graphs::GraphSpec::heaviside(shift);
    if (graph_kind == "stefan") return graphs::GraphSpec::stefan(a, rho, alpha1, alpha2);
    if (graph_kind == "power_sign") return graphs::GraphSpec::power_sign(alpha, coefficient);
    if (graph_kind == "coercive_sign") {
        return graphs::GraphSpec::coercive_sign(rho, graphs::LipschitzSpec::linear(delta));
    }
    throw ConfigError("unknown model.kind: " + graph_kind);
}

solver::SolverConfig RunConfig::solver_config() const {
    solver::SolverConfig cfg = solver::make_config(graph(), n, mu);
    cfg.lambda = lambda;
    cfg.dt = dt;
    cfg.horizon = horizon;
    cfg.record_stride = record_stride;
    cfg.extinction_threshold = epsilon_ext;
    return cfg;
}

extinction::ExtinctionConfig RunConfig::extinction_config() const {
    extinction::ExtinctionConfig ext;
    ext.rho = (graph_kind == "heaviside") ? 1.0 : rho;  // Heaviside jump height is 1
    ext.epsilon = epsilon_ext;
    ext.horizons = horizons;
    ext.trajectories = trajectories;
    ext.x_c = x_c;
    return ext;
}

hspace::Field RunConfig::initial_field() const {
    hspace::Grid grid = hspace::make_grid(n);
    if (init_kind == "constant") return hspace::constant_field(grid, init_amplitude);
    return hspace::sine_mode(grid, init_mode, init_amplitude);
}

std::string default_config_text() {
    return
        "# model\n"
        "model.kind = coercive_sign   # sign | heaviside | stefan | power_sign | coercive_sign\n"
        "model.rho = 1.0\n"
        "model.delta = 0.1            # coercive_sign linear slope\n"
        "model.shift = 0.0            # heaviside linear part\n"
        "model.a = 1.0                # stefan jump location\n"
        "model.alpha1 = 1.0\n"
        "model.alpha2 = 1.0\n"
        "model.alpha = 0.5            # power_sign exponent\n"
        "model.coefficient = 1.0\n"
        "model.x_c = 0.0              # critical density (SOC shift)\n"
        "\n"
        "# noise (empty mu means deterministic dynamics)\n"
        "noise.mu =\n"
        "\n"
        "# discretization\n"
        "grid.n = 400\n"
        "time.dt = 1e-4\n"
        "time.lambda = 1e-3\n"
        "time.T = 1.0\n"
        "\n"
        "# initial condition\n"
        "init.kind = mode             # mode | constant\n"
        "init.mode = 1\n"
        "init.amplitude = 0.1\n"
        "\n"
        "# extinction study\n"
        "extinction.epsilon = 1e-6\n"
        "extinction.horizons = 0.05, 0.1, 0.2, 0.5\n"
        "extinction.trajectories = 400\n"
        "\n"
        "seed = 12345\n"
        "output.dir = .\n"
        "output.record_stride = 1\n";
}

}  // namespace spme::config
