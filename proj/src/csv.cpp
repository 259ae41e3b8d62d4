#include "eaq/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace eaq {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void close_checked(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_trajectory_csv(const std::string& path, const std::vector<double>& grid,
                          const std::vector<ScaledState>& states) {
  if (grid.size() != states.size())
    throw std::invalid_argument("write_trajectory_csv: grid/states size mismatch");
  auto out = open_out(path);
  out << "t,y1,y2\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << num(grid[i]) << ',' << num(states[i].y1) << ',' << states[i].y2 << '\n';
  close_checked(out, path);
}

void write_fluid_csv(const std::string& path, const FluidSolution& fs) {
  auto out = open_out(path);
  out << "t,yA\n";
  for (std::size_t i = 0; i < fs.grid.size(); ++i)
    out << num(fs.grid[i]) << ',' << num(fs.values[i]) << '\n';
  close_checked(out, path);
}

void write_sigma_f_csv(const std::string& path, const SigmaFProfile& prof) {
  auto out = open_out(path);
  out << "t,g,sigmaF\n";
  for (std::size_t i = 0; i < prof.grid.size(); ++i)
    out << num(prof.grid[i]) << ',' << num(prof.density[i]) << ',' << num(prof.cumulative[i])
        << '\n';
  close_checked(out, path);
}

void write_var_w_csv(const std::string& path, const SigmaFProfile& prof,
                     const std::vector<double>& var) {
  if (prof.grid.size() != var.size())
    throw std::invalid_argument("write_var_w_csv: grid/var size mismatch");
  auto out = open_out(path);
  out << "t,varW\n";
  for (std::size_t i = 0; i < prof.grid.size(); ++i)
    out << num(prof.grid[i]) << ',' << num(var[i]) << '\n';
  close_checked(out, path);
}

void write_fluctuation_csv(const std::string& path, const FluctuationPath& wp) {
  auto out = open_out(path);
  out << "t,W\n";
  for (std::size_t i = 0; i < wp.grid.size(); ++i)
    out << num(wp.grid[i]) << ',' << num(wp.values[i]) << '\n';
  close_checked(out, path);
}

void write_ensemble_csv(const std::string& path, const EnsembleSummary& es) {
  auto out = open_out(path);
  out << "t,mean,sd\n";
  for (std::size_t i = 0; i < es.grid.size(); ++i)
    out << num(es.grid[i]) << ',' << num(es.mean[i]) << ',' << num(es.sd[i]) << '\n';
  close_checked(out, path);
}

void write_reports_csv(const std::string& path, const std::vector<TestReport>& reports) {
  auto out = open_out(path);
  out << "name,statistic,threshold,passed\n";
  for (const auto& r : reports)
    out << r.name << ',' << num(r.statistic) << ',' << num(r.threshold) << ','
        << (r.passed ? "true" : "false") << '\n';
  close_checked(out, path);
}

void write_sweep_csv(const std::string& path, const std::vector<double>& lambda_b,
                     const std::vector<double>& y_s) {
  if (lambda_b.size() != y_s.size())
    throw std::invalid_argument("write_sweep_csv: size mismatch");
  auto out = open_out(path);
  out << "lambda_B,y_s\n";
  for (std::size_t i = 0; i < lambda_b.size(); ++i)
    out << num(lambda_b[i]) << ',' << num(y_s[i]) << '\n';
  close_checked(out, path);
}

}  // namespace eaq
