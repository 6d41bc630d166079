#include "dagcut/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dagcut/errors.hpp"

namespace dagcut {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kDegenerateLimit = 500;
constexpr int kMaxPivots = 200'000;

}  // namespace

SimplexResult restricted_simplex(std::span<const double> costs,
                                 const std::vector<std::vector<int>>& rows,
                                 double tol) {
  const std::size_t m = costs.size();        // edges -> dual constraints
  const std::size_t r = rows.size();         // covering rows -> dual variables
  for (const auto& row : rows) {
    if (row.empty()) raise(ErrorCode::InvalidArgument, "covering row must be nonempty");
    for (int e : row) {
      if (e < 0 || static_cast<std::size_t>(e) >= m) {
        raise(ErrorCode::InvalidArgument, "covering row references unknown variable");
      }
    }
  }
  for (double c : costs) {
    if (!(c >= 0.0)) raise(ErrorCode::InvalidArgument, "covering costs must be nonnegative");
  }

  // Tableau for max 1'y s.t. A'y + w = c, y, w >= 0. One row per edge,
  // columns: r dual variables, m slacks, RHS. Final row is the objective.
  const std::size_t cols = r + m + 1;
  std::vector<std::vector<double>> tab(m + 1, std::vector<double>(cols, 0.0));
  for (std::size_t j = 0; j < r; ++j) {
    for (int e : rows[j]) tab[static_cast<std::size_t>(e)][j] = 1.0;
  }
  for (std::size_t e = 0; e < m; ++e) {
    tab[e][r + e] = 1.0;
    tab[e][cols - 1] = costs[e];
  }
  // Objective row holds z_j - c_j; slack basis has cost 0, so it starts as
  // -1 under every y column.
  for (std::size_t j = 0; j < r; ++j) tab[m][j] = -1.0;

  std::vector<std::size_t> basis(m);
  for (std::size_t e = 0; e < m; ++e) basis[e] = r + e;

  int pivots = 0;
  int degenerate = 0;
  bool bland = false;

  while (true) {
    // Entering column.
    std::size_t enter = cols;  // sentinel
    if (bland) {
      for (std::size_t j = 0; j + 1 < cols; ++j) {
        if (tab[m][j] < -tol) {
          enter = j;
          break;
        }
      }
    } else {
      double best = -tol;
      for (std::size_t j = 0; j + 1 < cols; ++j) {
        if (tab[m][j] < best) {
          best = tab[m][j];
          enter = j;
        }
      }
    }
    if (enter == cols) break;  // optimal

    // Ratio test; smallest basis index breaks ties.
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = tab[i][enter];
      if (a > kPivotEps) {
        const double ratio = tab[i][cols - 1] / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave == m || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) {
      raise(ErrorCode::NumericalFailure,
            "no admissible pivot (magnitude below 1e-11) with reduced costs still negative");
    }
    if (best_ratio <= 1e-12) {
      if (++degenerate >= kDegenerateLimit) bland = true;
    }

    // Pivot.
    const double piv = tab[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) tab[leave][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = tab[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) tab[i][j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
    if (++pivots > kMaxPivots) {
      raise(ErrorCode::NumericalFailure, "pivot limit exceeded");
    }
  }

  SimplexResult out;
  out.pivots = pivots;
  out.duals.assign(r, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < r) out.duals[basis[i]] = std::max(0.0, tab[i][cols - 1]);
  }
  // Covering primal = multipliers of the dual program = objective-row entries
  // under the slack columns.
  out.x.assign(m, 0.0);
  for (std::size_t e = 0; e < m; ++e) out.x[e] = std::max(0.0, tab[m][r + e]);
  out.objective = tab[m][cols - 1];

  // Complementary slackness residual across both programs.
  double residual = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    double slack = -1.0;
    for (int e : rows[j]) slack += out.x[static_cast<std::size_t>(e)];
    if (slack < -tol * 10) {
      raise(ErrorCode::NumericalFailure, "covering constraint violated at optimum");
    }
    residual = std::max(residual, std::abs(out.duals[j] * slack));
  }
  std::vector<double> packed(m, 0.0);
  for (std::size_t j = 0; j < r; ++j) {
    for (int e : rows[j]) packed[static_cast<std::size_t>(e)] += out.duals[j];
  }
  for (std::size_t e = 0; e < m; ++e) {
    residual = std::max(residual, std::abs(out.x[e] * (costs[e] - packed[e])));
  }
  if (residual > std::max(tol * 100, 1e-7)) {
    raise(ErrorCode::NumericalFailure,
          "complementary slackness residual " + std::to_string(residual));
  }
  return out;
}

}  // namespace dagcut
