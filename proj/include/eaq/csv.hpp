#pragma once

#include <string>
#include <vector>

#include "eaq/fclt.hpp"
#include "eaq/fluid.hpp"
#include "eaq/gillespie.hpp"
#include "eaq/stats.hpp"

namespace eaq {

// All writers emit doubles as %.17g so files round-trip bit-exactly.
void write_trajectory_csv(const std::string& path, const std::vector<double>& grid,
                          const std::vector<ScaledState>& states);
void write_fluid_csv(const std::string& path, const FluidSolution& fs);
void write_sigma_f_csv(const std::string& path, const SigmaFProfile& prof);
void write_var_w_csv(const std::string& path, const SigmaFProfile& prof,
                     const std::vector<double>& var);
void write_fluctuation_csv(const std::string& path, const FluctuationPath& wp);
void write_ensemble_csv(const std::string& path, const EnsembleSummary& es);
void write_reports_csv(const std::string& path, const std::vector<TestReport>& reports);
void write_sweep_csv(const std::string& path, const std::vector<double>& lambda_b,
                     const std::vector<double>& y_s);

}  // namespace eaq
