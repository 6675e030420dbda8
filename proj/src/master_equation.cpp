#include "master_equation.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "errors.hpp"

namespace levitrap {

std::int64_t suggested_truncation(const LadderRates& lr) {
  const double mean = ladder_occupation(lr);
  const double wanted = std::max(200.0, std::ceil(30.0 * mean));
  if (wanted > 2e6)
    throw Error("master equation: required truncation exceeds the 2e6-state cap");
  return static_cast<std::int64_t>(wanted);
}

MasterEquationSteadyState master_equation_steady_state(const LadderRates& lr,
                                                       std::int64_t n_max) {
  if (n_max < 50) throw ValidationError("master equation requires n_max >= 50");
  if (!lr.admissible())
    throw InstabilityError("master equation: no steady state, damping at or below critical",
                           lr.gamma() / (8.0 * lr.up2));
  if (n_max > 2'000'000)
    throw ValidationError("master equation: n_max above the 2e6-state cap");

  const auto n = static_cast<Eigen::Index>(n_max + 1);
  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> entries;
  entries.reserve(static_cast<size_t>(n) * 5 + static_cast<size_t>(n));

  // Column m holds the outflow of state m; transitions leaving the
  // truncated box are dropped, which keeps every column summing to zero.
  for (Eigen::Index m = 0; m < n; ++m) {
    const double md = static_cast<double>(m);
    double outflow = 0.0;
    auto add = [&](Eigen::Index to, double rate) {
      if (rate <= 0.0) return;
      if (to < 0 || to >= n) return;
      if (to == n - 1) return;  // that row is the normalization constraint
      entries.emplace_back(to, m, rate);
    };
    if (m + 1 < n) {
      const double rate = lr.up1 * (md + 1.0);
      add(m + 1, rate);
      outflow += rate;
    }
    if (m >= 1) {
      const double rate = lr.down1 * md;
      add(m - 1, rate);
      outflow += rate;
    }
    if (m + 2 < n) {
      const double rate = lr.up2 * (md + 1.0) * (md + 2.0);
      add(m + 2, rate);
      outflow += rate;
    }
    if (m >= 2) {
      const double rate = lr.down2 * md * (md - 1.0);
      add(m - 2, rate);
      outflow += rate;
    }
    if (m != n - 1) entries.emplace_back(m, m, -outflow);
    entries.emplace_back(n - 1, m, 1.0);  // normalization row
  }

  Eigen::SparseMatrix<double> generator(n, n);
  generator.setFromTriplets(entries.begin(), entries.end());
  generator.makeCompressed();

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[n - 1] = 1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.analyzePattern(generator);
  solver.factorize(generator);
  if (solver.info() != Eigen::Success)
    throw Error("master equation: LU factorization of the generator failed");
  Eigen::VectorXd prob = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw Error("master equation: nullspace solve failed");

  MasterEquationSteadyState out;
  out.probabilities.assign(prob.data(), prob.data() + n);
  double norm = 0.0, mean = 0.0, second = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    const double pm = out.probabilities[static_cast<size_t>(m)];
    norm += pm;
    mean += static_cast<double>(m) * pm;
    second += static_cast<double>(m) * static_cast<double>(m) * pm;
  }
  out.mean = mean / norm;
  out.second_moment = second / norm;
  for (Eigen::Index m = std::max<Eigen::Index>(0, n - 6); m < n; ++m)
    out.tail_mass += std::abs(out.probabilities[static_cast<size_t>(m)]) / norm;

  if (out.tail_mass >= 1e-8) {
    const std::int64_t suggested =
        static_cast<std::int64_t>(std::ceil(20.0 * std::max(out.mean, 1.0)));
    char mass[24];
    std::snprintf(mass, sizeof(mass), "%.3e", out.tail_mass);
    throw ConvergenceError(std::string("master equation: truncation tail mass ") + mass +
                           " >= 1e-8; increase N_max (suggested " +
                           std::to_string(suggested) + ")");
  }
  return out;
}

}  // namespace levitrap
