#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spme/extinction.hpp"
#include "spme/solver.hpp"

namespace spme::config {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed form of the key = value run file. Units: time in model time,
/// space in radians on (0, pi).
struct RunConfig {
    // model
    std::string graph_kind = "coercive_sign";
    double rho = 1.0;
    double delta = 0.1;        // coercive_sign linear part
    double shift = 0.0;        // heaviside
    double a = 1.0;            // stefan
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double alpha = 0.5;        // power_sign
    double coefficient = 1.0;
    double x_c = 0.0;

    // noise
    std::vector<double> mu;

    // discretization
    int n = 400;
    double dt = 1e-4;
    double lambda = 1e-3;
    double horizon = 1.0;

    // initial condition
    std::string init_kind = "mode";  // mode | constant
    int init_mode = 1;
    double init_amplitude = 0.1;

    // extinction study
    double epsilon_ext = 1e-6;
    std::vector<double> horizons{0.05, 0.1, 0.2, 0.5};
    int trajectories = 400;

    std::uint64_t seed = 12345;
    std::string out_dir = ".";
    int record_stride = 1;

    solver::SolverConfig solver_config() const;
    extinction::ExtinctionConfig extinction_config() const;
    graphs::GraphSpec graph() const;
    /// Initial state in physical variables (before the SOC shift).
    hspace::Field initial_field() const;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);
std::string default_config_text();

}  // namespace spme::config
