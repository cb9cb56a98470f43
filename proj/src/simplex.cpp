#include "nlfrac/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlfrac {

namespace {

constexpr long kArtificial = -1;
constexpr long kRedundant = -2;

class Tableau {
 public:
  Tableau(const LpProblem& p, const SimplexOptions& o)
      : m_(p.rows), n_(p.cols), w_(p.cols + 1), t_(p.rows * (p.cols + 1)), d_(p.cols + 1, 0.0),
        basis_(p.rows, kArtificial), opt_(o) {
    for (std::size_t r = 0; r < m_; ++r) {
      const double sign = p.b[r] < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) t_[r * w_ + j] = sign * p.a[r * n_ + j];
      t_[r * w_ + n_] = sign * p.b[r];
    }
    max_pivots_ = o.max_pivots ? o.max_pivots : 50 * (m_ + n_);
  }

  // Phase one: minimize the sum of artificial variables.
  double phase_one() {
    std::fill(d_.begin(), d_.end(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t j = 0; j <= n_; ++j) d_[j] -= t_[r * w_ + j];
    }
    iterate();
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] == kArtificial) infeasibility += std::abs(t_[r * w_ + n_]);
    }
    return infeasibility;
  }

  // Replaces basic artificials by structural columns; rows where that is
  // impossible are linear combinations of the others and are dropped.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] != kArtificial) continue;
      std::size_t best = n_;
      double best_abs = opt_.pivot_tolerance;
      for (std::size_t j = 0; j < n_; ++j) {
        const double v = std::abs(t_[r * w_ + j]);
        if (v > best_abs && !is_basic(j)) {
          best_abs = v;
          best = j;
        }
      }
      if (best < n_) {
        pivot(r, best);
      } else {
        basis_[r] = kRedundant;
        std::fill(t_.begin() + static_cast<long>(r * w_), t_.begin() + static_cast<long>((r + 1) * w_), 0.0);
      }
    }
  }

  bool phase_two(const std::vector<double>& c) {
    std::fill(d_.begin(), d_.end(), 0.0);
    std::copy(c.begin(), c.end(), d_.begin());
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < 0) continue;
      const double cb = c[static_cast<std::size_t>(basis_[r])];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) d_[j] -= cb * t_[r * w_ + j];
    }
    return iterate();
  }

  std::vector<double> solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= 0) x[static_cast<std::size_t>(basis_[r])] = t_[r * w_ + n_];
    }
    return x;
  }

  double objective() const { return -d_[n_]; }
  std::size_t pivots() const { return pivots_; }

 private:
  bool is_basic(std::size_t j) const {
    return std::find(basis_.begin(), basis_.end(), static_cast<long>(j)) != basis_.end();
  }

  void pivot(std::size_t r, std::size_t c) {
    double* row = &t_[r * w_];
    const double inv = 1.0 / row[c];
    for (std::size_t j = 0; j <= n_; ++j) row[j] *= inv;
    row[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* other = &t_[i * w_];
      const double f = other[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) other[j] -= f * row[j];
      other[c] = 0.0;
    }
    const double f = d_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= n_; ++j) d_[j] -= f * row[j];
      d_[c] = 0.0;
    }
    basis_[r] = static_cast<long>(c);
    ++pivots_;
  }

  // Returns false if the objective is unbounded below.
  bool iterate() {
    std::size_t degenerate = 0;
    while (true) {
      const bool bland = degenerate >= opt_.degenerate_limit;
      std::size_t enter = n_;
      double most = -opt_.cost_tolerance;
      for (std::size_t j = 0; j < n_; ++j) {
        if (d_[j] < most) {
          enter = j;
          if (bland) break;
          most = d_[j];
        }
      }
      if (enter == n_) return true;

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = t_[r * w_ + enter];
        if (a <= opt_.pivot_tolerance) continue;
        const double ratio = std::max(t_[r * w_ + n_], 0.0) / a;
        if (leave == m_ || ratio < best_ratio - 1e-12) {
          leave = r;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12 && prefer_leaving(r, leave)) {
          leave = r;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave == m_) return false;
      degenerate = best_ratio <= 1e-12 ? degenerate + 1 : 0;
      if (pivots_ >= max_pivots_) throw LpFailure("simplex pivot limit reached");
      pivot(leave, enter);
    }
  }

  // Tie-break: artificial rows leave first, then the smallest basic index.
  bool prefer_leaving(std::size_t candidate, std::size_t current) const {
    const long a = basis_[candidate], b = basis_[current];
    if (a == kArtificial) return b != kArtificial;
    if (b == kArtificial) return false;
    return a < b;
  }

  std::size_t m_, n_, w_;
  std::vector<double> t_;
  std::vector<double> d_;
  std::vector<long> basis_;
  const SimplexOptions& opt_;
  std::size_t pivots_ = 0;
  std::size_t max_pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options) {
  if (problem.a.size() != problem.rows * problem.cols || problem.b.size() != problem.rows ||
      (!options.feasibility_only && problem.c.size() != problem.cols)) {
    throw std::invalid_argument("LP dimensions are inconsistent");
  }
  Tableau tab(problem, options);
  LpSolution sol;
  sol.infeasibility = tab.phase_one();
  if (sol.infeasibility > options.equality_tolerance * static_cast<double>(std::max<std::size_t>(1, problem.rows))) {
    sol.status = LpStatus::kInfeasible;
    sol.pivots = tab.pivots();
    return sol;
  }
  tab.drive_out_artificials();
  if (!options.feasibility_only) {
    if (!tab.phase_two(problem.c)) {
      sol.status = LpStatus::kUnbounded;
      sol.pivots = tab.pivots();
      return sol;
    }
  }
  sol.status = LpStatus::kOptimal;
  sol.x = tab.solution();
  sol.pivots = tab.pivots();

  double scale = 1.0;
  for (double v : problem.b) scale = std::max(scale, std::abs(v));
  double residual = 0.0;
  for (std::size_t r = 0; r < problem.rows; ++r) {
    double s = -problem.b[r];
    for (std::size_t j = 0; j < problem.cols; ++j) s += problem.a[r * problem.cols + j] * sol.x[j];
    residual = std::max(residual, std::abs(s));
  }
  const double slack = 1e-7 * scale + sol.infeasibility;
  if (residual > slack) {
    throw LpFailure("LP solution violates constraints by " + std::to_string(residual));
  }
  for (double& v : sol.x) {
    if (v < -1e-9) throw LpFailure("LP solution has a negative variable " + std::to_string(v));
    v = std::max(v, 0.0);
  }
  sol.objective = 0.0;
  if (!options.feasibility_only) {
    for (std::size_t j = 0; j < problem.cols; ++j) sol.objective += problem.c[j] * sol.x[j];
  }
  return sol;
}

}  // namespace nlfrac
