#include "spme/report.hpp"

#include <algorithm>
#include <cmath>

namespace spme::report {

using nlohmann::json;

void write_trajectory_csv(std::ostream& os, const solver::Trajectory& traj) {
    os << "t,h1norm,l2norm,l1norm,minX,dissipation\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        // dissipation belongs to the step ending at t_i; none at t_0
        double diss = (i > 0) ? traj.dissipation[i - 1] : 0.0;
        os << traj.times[i] << ',' << traj.h1_norm[i] << ',' << traj.l2_norm[i]
           << ',' << traj.l1_norm[i] << ',' << traj.min_x[i] << ',' << diss << '\n';
    }
}

void write_extinction_times_csv(std::ostream& os,
                                const extinction::EnsembleResult& result) {
    os << "trajectory_id,extinction_time,censored\n";
    for (std::size_t id = 0; id < result.extinction_times.size(); ++id) {
        const auto& t = result.extinction_times[id];
        os << id << ',';
        if (t) {
            os << *t << ",0\n";
        } else {
            os << ",1\n";
        }
    }
}

namespace {

json params_block(const config::RunConfig& run) {
    return json{{"model", {{"kind", run.graph_kind},
                           {"rho", run.rho},
                           {"delta", run.delta},
                           {"x_c", run.x_c}}},
                {"noise", {{"N", run.mu.size()}, {"mu", run.mu}}},
                {"discretization", {{"n", run.n},
                                    {"dt", run.dt},
                                    {"lambda", run.lambda},
                                    {"T", run.horizon}}},
                {"init", {{"kind", run.init_kind},
                          {"mode", run.init_mode},
                          {"amplitude", run.init_amplitude}}},
                {"seed", run.seed}};
}

}  // namespace

json trajectory_summary(const solver::Trajectory& traj,
                        const solver::SolverConfig& cfg,
                        const config::RunConfig& run) {
    auto residuals = solver::energy_residual(traj, cfg);
    double max_resid = 0.0;
    for (double r : residuals) max_resid = std::max(max_resid, r);

    json j;
    j["params"] = params_block(run);
    if (traj.extinction_time) {
        j["extinction_time"] = *traj.extinction_time;
    } else {
        j["extinction_time"] = nullptr;
    }
    j["final"] = {{"t", traj.times.back()},
                  {"h1norm", traj.h1_norm.back()},
                  {"l2norm", traj.l2_norm.back()},
                  {"l1norm", traj.l1_norm.back()},
                  {"min_x", solver::positivity_check(traj)}};
    j["energy_residual_max"] = max_resid;
    return j;
}

json ensemble_summary(const extinction::EnsembleResult& result,
                      const config::RunConfig& run) {
    json j;
    j["params"] = params_block(run);
    j["x0_h1norm"] = result.x0_norm;
    j["rho"] = result.rho;
    j["gamma_est"] = result.gamma_est;
    j["c_n"] = result.c_n;
    j["admissible"] = result.admissible;
    j["aborted"] = result.aborted;
    j["horizons"] = json::array();
    for (const auto& hr : result.horizons) {
        j["horizons"].push_back({{"n", hr.horizon},
                                 {"p_hat", hr.p_hat},
                                 {"ci_lo", hr.ci_lo},
                                 {"ci_hi", hr.ci_hi},
                                 {"bound", hr.bound}});
    }
    j["extinction_times"] = json::array();
    for (const auto& t : result.extinction_times) {
        if (t) {
            j["extinction_times"].push_back(*t);
        } else {
            j["extinction_times"].push_back(nullptr);
        }
    }
    return j;
}

}  // namespace spme::report
