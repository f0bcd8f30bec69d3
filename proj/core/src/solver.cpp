#include "spme/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spme::solver {

using hspace::Field;

SolverConfig make_config(graphs::GraphSpec graph, int n, std::vector<double> mu) {
    SolverConfig cfg;
    cfg.graph = std::move(graph);
    cfg.n = n;
    cfg.noise = noise::NoiseModel(hspace::make_grid(n), std::move(mu));
    return cfg;
}

namespace {

// w_i = Psi_lambda(X_i) + lambda X_i and its a.e. slope.
void drift_nonlinearity(const SolverConfig& cfg, const std::vector<double>& x,
                        std::vector<double>& w, std::vector<double>& slope) {
    const auto& g = cfg.graph;
    const double l = cfg.lambda;
    for (std::size_t i = 0; i < x.size(); ++i) {
        w[i] = g.regularized(l, x[i]) + l * x[i];
        slope[i] = g.regularized_slope(l, x[i]) + l;
    }
}

// F(X) = X + dt * A_h w(X) - forcing
void residual(const SolverConfig& cfg, const hspace::Grid& grid,
              const std::vector<double>& x, const std::vector<double>& w,
              const std::vector<double>& forcing, std::vector<double>& f) {
    const int n = grid.n;
    const double c = cfg.dt / (grid.h * grid.h);
    for (int i = 0; i < n; ++i) {
        double left = (i > 0) ? w[i - 1] : 0.0;
        double right = (i < n - 1) ? w[i + 1] : 0.0;
        f[i] = x[i] + c * (2.0 * w[i] - left - right) - forcing[i];
    }
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::pair<Field, Field> implicit_step(const Field& x_prev, const Field& forcing,
                                      const SolverConfig& cfg) {
    const hspace::Grid grid = x_prev.grid;
    const int n = grid.n;
    const double c = cfg.dt / (grid.h * grid.h);

    // F is the gradient (in the discrete H^{-1} metric) of the strictly convex
    // step energy, so the semismooth Newton direction is always a descent
    // direction there; the line search minimizes the energy along it exactly.
    std::vector<double> x = x_prev.values;
    std::vector<double> w(n), slope(n), f(n), trial(n), w_trial(n), f_trial(n);
    std::vector<double> lower(n - 1), diag(n), upper(n - 1), rhs(n);

    drift_nonlinearity(cfg, x, w, slope);
    residual(cfg, grid, x, w, forcing.values, f);
    double fnorm = max_abs(f);

    // phi'(alpha) = <F(x + alpha d), d>_{-1} up to the constant factor h
    auto dir_derivative = [&](const std::vector<double>& res,
                              const std::vector<double>& d) {
        Field u = hspace::laplacian_solve(Field{grid, res});
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += u.values[i] * d[i];
        return s;
    };
    auto eval_at = [&](const std::vector<double>& d, double alpha) {
        for (int i = 0; i < n; ++i) trial[i] = x[i] + alpha * d[i];
        drift_nonlinearity(cfg, trial, w_trial, slope);
        residual(cfg, grid, trial, w_trial, forcing.values, f_trial);
    };

    for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
        if (fnorm <= cfg.newton_tol) {
            return {Field{grid, std::move(x)}, Field{grid, std::move(w)}};
        }
        // Solve J d = -F with J = I + dt A_h diag(s) through the substitution
        // y = diag(s) d: (diag(1/s) + dt A_h) y = -F is symmetric and
        // diagonally dominant, so the Thomas sweep is stable.
        for (int i = 0; i < n; ++i) {
            diag[i] = 1.0 / slope[i] + 2.0 * c;
            rhs[i] = -f[i];
        }
        std::fill(lower.begin(), lower.end(), -c);
        std::fill(upper.begin(), upper.end(), -c);
        std::vector<double> d = hspace::solve_tridiagonal(lower, diag, upper, rhs);
        for (int i = 0; i < n; ++i) d[i] /= slope[i];

        // Exact line search: minimize the step energy along d. Accepting on
        // any other merit (e.g. the residual norm) can cycle between pieces
        // of the piecewise-linear system; monotone energy descent cannot.
        eval_at(d, 1.0);
        if (dir_derivative(f_trial, d) > 0.0) {
            // overshot the energy minimum along d: bisect phi'(alpha) = 0
            double lo = 0.0, hi = 1.0;
            for (int b = 0; b < 60; ++b) {
                double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                eval_at(d, mid);
                if (dir_derivative(f_trial, d) > 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            eval_at(d, lo > 0.0 ? lo : 0.5 * hi);
        }
        x.swap(trial);
        w.swap(w_trial);
        f.swap(f_trial);
        fnorm = max_abs(f);
    }
    if (fnorm <= cfg.newton_tol) {
        return {Field{grid, std::move(x)}, Field{grid, std::move(w)}};
    }
    throw StepError("Newton did not converge within iteration cap", fnorm);
}

Trajectory integrate_trajectory(const SolverConfig& cfg, const Field& x0,
                                noise::RngStream rng) {
    const hspace::Grid grid = x0.grid;
    Trajectory traj;
    const long nsteps = std::lround(cfg.horizon / cfg.dt);

    auto record = [&](double t, const Field& x) {
        traj.times.push_back(t);
        traj.h1_norm.push_back(hspace::hminus1_norm(x));
        traj.l2_norm.push_back(hspace::lp_norm(x, 2.0));
        traj.l1_norm.push_back(hspace::lp_norm(x, 1.0));
        traj.min_x.push_back(x.grid.n ? *std::min_element(x.values.begin(),
                                                          x.values.end())
                                      : 0.0);
    };

    Field x = x0;
    record(0.0, x);
    if (cfg.record_fields) traj.fields.push_back(x);

    const double x0_norm = traj.h1_norm.front();
    const double threshold = cfg.extinction_threshold * x0_norm;
    const bool monitor = cfg.extinction_threshold > 0.0;
    long below_count = 0;
    double first_below = 0.0;

    if (monitor && x0_norm <= threshold) {
        traj.extinction_time = 0.0;
        if (cfg.stop_at_extinction) return traj;
    }

    for (long step = 0; step < nsteps; ++step) {
        Field forcing = x;
        if (cfg.noise.mode_count() > 0) {
            Field inc = noise::sample_increment(cfg.noise, x, cfg.dt, rng);
            for (int i = 0; i < grid.n; ++i) forcing.values[i] += inc.values[i];
        } else {
            ++rng.step;  // keep the stream aligned for shared-path studies
        }
        traj.forcing_h1.push_back(hspace::hminus1_norm(forcing));

        auto [x_new, w] = implicit_step(x, forcing, cfg);
        x = std::move(x_new);
        traj.dissipation.push_back(hspace::inner_l2(w, x));

        const double t = (step + 1) * cfg.dt;
        record(t, x);
        if (cfg.record_fields && (step + 1) % cfg.record_stride == 0) {
            traj.fields.push_back(x);
        }

        if (monitor && !traj.extinction_time) {
            if (traj.h1_norm.back() <= threshold) {
                if (below_count == 0) first_below = t;
                ++below_count;
                if (below_count >= cfg.extinction_persistence) {
                    traj.extinction_time = first_below;
                    if (cfg.stop_at_extinction) break;
                }
            } else {
                below_count = 0;
            }
        }
    }
    return traj;
}

std::vector<double> energy_residual(const Trajectory& traj, const SolverConfig& cfg) {
    std::vector<double> out;
    const std::size_t steps = traj.forcing_h1.size();
    out.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        double xn1 = traj.h1_norm[k + 1];
        double g = traj.forcing_h1[k];
        out.push_back(xn1 * xn1 + 2.0 * cfg.dt * traj.dissipation[k] - g * g);
    }
    return out;
}

double positivity_check(const Trajectory& traj) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : traj.min_x) m = std::min(m, v);
    return m;
}

LpBoundResult lp_bound_check(const Trajectory& traj, double p) {
    if (!(p >= 2.0)) throw std::invalid_argument("lp_bound_check requires p >= 2");
    if (traj.fields.size() != traj.times.size()) {
        throw std::invalid_argument("lp_bound_check needs fields recorded at stride 1");
    }
    LpBoundResult res;
    res.series.reserve(traj.fields.size());
    for (const auto& f : traj.fields) {
        res.series.push_back(std::pow(hspace::lp_norm(f, p), p));
    }
    // least-squares slope of log(series) over the strictly positive entries
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < res.series.size(); ++i) {
        if (res.series[i] <= 0.0) continue;
        double t = traj.times[i];
        double y = std::log(res.series[i]);
        sx += t; sy += y; sxx += t * t; sxy += t * y;
        ++m;
    }
    double denom = m * sxx - sx * sx;
    res.fitted_rate = (m >= 2 && denom != 0.0) ? (m * sxy - sx * sy) / denom : 0.0;
    return res;
}

double l2_time_difference(const Trajectory& a, const Trajectory& b, double dt) {
    if (a.fields.size() != b.fields.size() || a.fields.empty()) {
        throw std::invalid_argument("trajectories must share the recording mesh");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
        Field diff = a.fields[i];
        for (int j = 0; j < diff.grid.n; ++j) diff.values[j] -= b.fields[i].values[j];
        double l2 = hspace::lp_norm(diff, 2.0);
        s += dt * l2 * l2;
    }
    return std::sqrt(s);
}

}  // namespace spme::solver
