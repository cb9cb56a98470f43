#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlfrac {

/// Raised when the solver cannot produce a trustworthy answer (iteration
/// limit, or a solution whose constraint residual exceeds tolerance).
class LpFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// minimize c.x  subject to  A x = b,  x >= 0.  A is row-major rows x cols.
struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  /// Sum of artificial variables at the end of phase one.
  double infeasibility = 0.0;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-10;
  /// Per-row equality tolerance; phase one is infeasible above rows * this.
  double equality_tolerance = 1e-8;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
  std::size_t max_pivots = 0;  // 0 = 50 * (rows + cols)
  /// Stop after phase one (pure feasibility).
  bool feasibility_only = false;
};

/// Dense two-phase primal simplex. Deterministic for identical input.
LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace nlfrac
