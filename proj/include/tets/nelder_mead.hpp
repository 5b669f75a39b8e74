#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace tets {

struct NelderMeadOptions {
  double initial_step = 0.5;    // simplex edge length around the start
  double diameter_tol = 1e-6;   // stop when max vertex distance falls below
  int max_evals = 2000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double fmin = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Downhill simplex minimization with standard reflection/expansion/
/// contraction/shrink coefficients. Handles +inf objective values, so the
/// objective may use an infinite sentinel outside its admissible region.
inline NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& start, const NelderMeadOptions& opts = {}) {
  const int n = static_cast<int>(start.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<Eigen::VectorXd> x(n + 1, start);
  for (int i = 0; i < n; ++i) x[i + 1](i) += opts.initial_step;

  std::vector<double> fx(n + 1);
  int evals = 0;
  for (int i = 0; i <= n; ++i) {
    fx[i] = f(x[i]);
    ++evals;
  }

  std::vector<int> order(n + 1);
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fx[a] < fx[b]; });
  };

  auto diameter = [&] {
    double d = 0.0;
    for (int i = 1; i <= n; ++i) {
      d = std::max(d, (x[order[i]] - x[order[0]]).norm());
    }
    return d;
  };

  bool converged = false;
  while (evals < opts.max_evals) {
    sort_vertices();
    if (diameter() < opts.diameter_tol) {
      converged = true;
      break;
    }

    const int best = order[0], second_worst = order[n - 1], worst = order[n];
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += x[order[i]];
    centroid /= static_cast<double>(n);

    Eigen::VectorXd xr = centroid + alpha * (centroid - x[worst]);
    double fr = f(xr);
    ++evals;

    if (fr < fx[best]) {
      Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        x[worst] = std::move(xe);
        fx[worst] = fe;
      } else {
        x[worst] = std::move(xr);
        fx[worst] = fr;
      }
    } else if (fr < fx[second_worst]) {
      x[worst] = std::move(xr);
      fx[worst] = fr;
    } else {
      const bool outside = fr < fx[worst];
      Eigen::VectorXd xc =
          outside ? centroid + rho * (xr - centroid)
                  : centroid + rho * (x[worst] - centroid);
      double fc = f(xc);
      ++evals;
      if (fc < (outside ? fr : fx[worst])) {
        x[worst] = std::move(xc);
        fx[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          const int v = order[i];
          x[v] = x[order[0]] + sigma * (x[v] - x[order[0]]);
          fx[v] = f(x[v]);
          ++evals;
        }
      }
    }
  }

  sort_vertices();
  NelderMeadResult r;
  r.x = x[order[0]];
  r.fmin = fx[order[0]];
  r.evals = evals;
  r.converged = converged;
  return r;
}

} // namespace tets
