#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spme/graphs.hpp"
#include "spme/hspace.hpp"
#include "spme/noise.hpp"

namespace spme::solver {

struct SolverConfig {
    graphs::GraphSpec graph = graphs::GraphSpec::sign(1.0);
    noise::NoiseModel noise{hspace::make_grid(2), {}};
    double lambda = 1e-3;
    double dt = 1e-4;
    int n = 400;
    double horizon = 1.0;
    int record_stride = 1;      // stride for stored fields
    bool record_fields = false;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;

    // Early stop: relative H^{-1} threshold with a persistence window.
    // A threshold of 0 disables extinction monitoring.
    double extinction_threshold = 1e-6;
    int extinction_persistence = 100;
    bool stop_at_extinction = true;
};

SolverConfig make_config(graphs::GraphSpec graph, int n,
                         std::vector<double> mu = {});

/// Thrown when the per-step Newton solve fails even after damping;
/// usually signals a dt/lambda misconfiguration.
class StepError : public std::runtime_error {
public:
    StepError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

struct Trajectory {
    std::vector<double> times;         // per step, starting at t = 0
    std::vector<double> h1_norm;       // |X|_{-1}
    std::vector<double> l2_norm;
    std::vector<double> l1_norm;
    std::vector<double> min_x;
    std::vector<double> dissipation;   // <Psi_l(X_{n+1}) + l X_{n+1}, X_{n+1}>_2 per step
    std::vector<double> forcing_h1;    // |X_n + noise_n|_{-1} per step
    std::vector<hspace::Field> fields; // strided snapshots if record_fields
    std::optional<double> extinction_time;
};

/// Solve X + dt * A_h (Psi_lambda(X) + lambda X) = forcing by semismooth
/// Newton with a tridiagonal Jacobian and a convex-energy line search.
/// Returns (X_new, w) with w = Psi_lambda(X_new) + lambda * X_new.
std::pair<hspace::Field, hspace::Field> implicit_step(const hspace::Field& x_prev,
                                                      const hspace::Field& forcing,
                                                      const SolverConfig& cfg);

Trajectory integrate_trajectory(const SolverConfig& cfg, const hspace::Field& x0,
                                noise::RngStream rng);

/// Per-step energy residual
///   |X_{n+1}|_{-1}^2 + 2 dt <w_{n+1}, X_{n+1}>_2 - |X_n + noise_n|_{-1}^2;
/// every entry is <= 0 up to solver tolerance for the implicit scheme.
std::vector<double> energy_residual(const Trajectory& traj, const SolverConfig& cfg);

/// Minimum of X over time and space (from the per-step min ledger).
double positivity_check(const Trajectory& traj);

struct LpBoundResult {
    std::vector<double> series;  // |X(t)|_p^p over recorded fields
    double fitted_rate;          // least-squares exponential rate, 0 if degenerate
};

/// Requires recorded fields at stride 1 and p >= 2.
LpBoundResult lp_bound_check(const Trajectory& traj, double p);

/// Discrete L2(0,T;L2) distance between two trajectories recorded on the
/// same time mesh: sqrt(sum_n dt |X_a(t_n) - X_b(t_n)|_2^2).
double l2_time_difference(const Trajectory& a, const Trajectory& b, double dt);

}  // namespace spme::solver
