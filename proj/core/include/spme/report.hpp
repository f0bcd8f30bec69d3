#pragma once

#include <nlohmann/json.hpp>

#include <ostream>

#include "spme/extinction.hpp"
#include "spme/run_config.hpp"
#include "spme/solver.hpp"

namespace spme::report {

/// Columns: t, h1norm, l2norm, l1norm, minX, dissipation.
void write_trajectory_csv(std::ostream& os, const solver::Trajectory& traj);

void write_extinction_times_csv(std::ostream& os,
                                const extinction::EnsembleResult& result);

nlohmann::json trajectory_summary(const solver::Trajectory& traj,
                                  const solver::SolverConfig& cfg,
                                  const config::RunConfig& run);

nlohmann::json ensemble_summary(const extinction::EnsembleResult& result,
                                const config::RunConfig& run);

}  // namespace spme::report
