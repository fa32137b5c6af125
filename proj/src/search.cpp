#include "distorder/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "distorder/errors.hpp"
#include "distorder/seeding.hpp"

namespace distorder {

void SearchParams::validate() const {
  if (restarts < 1) throw InvalidArgument("search: restarts must be >= 1");
  if (max_iters < 1) throw InvalidArgument("search: max_iters must be >= 1");
  if (!(margin > 0.0)) throw InvalidArgument("search: margin must be positive");
  if (!(margin_floor > 0.0) || margin_floor > margin) throw InvalidArgument("search: need 0 < margin_floor <= margin");
  if (plateau_iters < 1) throw InvalidArgument("search: plateau_iters must be >= 1");
  if (!(initial_step > 0.0)) throw InvalidArgument("search: initial_step must be positive");
}

const char* to_string(SearchStatus s) { return s == SearchStatus::realized ? "realized" : "exhausted"; }

namespace {

// Flat coordinates: P rows first, then Q rows, `dim` values each. p_0 stays
// pinned at the origin.
class HingeObjective {
 public:
  HingeObjective(const RankTable& target, int dim)
      : n_(target.rows()), m_(target.cols()), dim_(dim), order_(target.cells_by_rank()), sq_(order_.size()) {}

  std::size_t size() const { return static_cast<std::size_t>((n_ + m_) * dim_); }

  // Returns the loss; fills grad (if non-null) and the minimum consecutive gap.
  double evaluate(const std::vector<double>& x, double margin, std::vector<double>* grad, double& min_gap) {
    for (std::size_t k = 0; k < order_.size(); ++k) sq_[k] = sq(x, order_[k]);
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);
    double loss = 0.0;
    min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < order_.size(); ++k) {
      const double gap = sq_[k + 1] - sq_[k];
      min_gap = std::min(min_gap, gap);
      const double term = margin - gap;
      if (term <= 0.0) continue;
      loss += term;
      if (grad) {
        accumulate(x, order_[k], 1.0, *grad);
        accumulate(x, order_[k + 1], -1.0, *grad);
      }
    }
    if (grad) std::fill(grad->begin(), grad->begin() + dim_, 0.0);
    return loss;
  }

  Configuration to_configuration(const std::vector<double>& x) const {
    Configuration c;
    c.dim = dim_;
    for (int i = 0; i < n_ + m_; ++i) {
      Point p = Eigen::Map<const Eigen::VectorXd>(x.data() + static_cast<std::ptrdiff_t>(i * dim_), dim_);
      (i < n_ ? c.P : c.Q).push_back(std::move(p));
    }
    return c;
  }

 private:
  const double* p_of(const std::vector<double>& x, int i) const { return x.data() + i * dim_; }
  const double* q_of(const std::vector<double>& x, int j) const { return x.data() + (n_ + j) * dim_; }

  double sq(const std::vector<double>& x, Cell c) const {
    const double* p = p_of(x, c.row);
    const double* q = q_of(x, c.col);
    double s = 0.0;
    for (int t = 0; t < dim_; ++t) {
      const double diff = p[t] - q[t];
      s += diff * diff;
    }
    return s;
  }

  // grad += sign * d|p - q|^2
  void accumulate(const std::vector<double>& x, Cell c, double sign, std::vector<double>& grad) const {
    const double* p = p_of(x, c.row);
    const double* q = q_of(x, c.col);
    double* gp = grad.data() + c.row * dim_;
    double* gq = grad.data() + (n_ + c.col) * dim_;
    for (int t = 0; t < dim_; ++t) {
      const double g = 2.0 * sign * (p[t] - q[t]);
      gp[t] += g;
      gq[t] -= g;
    }
  }

  int n_;
  int m_;
  int dim_;
  std::vector<Cell> order_;
  std::vector<double> sq_;
};

struct RestartOutcome {
  bool realized = false;
  std::vector<double> x;
  double relative_gap = -std::numeric_limits<double>::infinity();
  double margin = 0.0;
  int iterations = 0;
};

bool verify(const HingeObjective& objective, const std::vector<double>& x, const RankTable& target) {
  try {
    return induced_order(objective.to_configuration(x)) == target;
  } catch (const DegeneracyError&) {
    return false;
  }
}

double relative(double gap, const std::vector<double>& x) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  return scale > 0.0 ? gap / (scale * scale) : gap;
}

RestartOutcome run_restart(HingeObjective& objective, const RankTable& target, int dim, const SearchParams& params,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> x(objective.size());
  for (auto& v : x) v = uniform(rng);
  std::fill(x.begin(), x.begin() + dim, 0.0);

  std::vector<double> grad(x.size());
  std::vector<double> trial(x.size());
  double margin = params.margin;
  double step = params.initial_step;
  double gap = 0.0;
  double loss = objective.evaluate(x, margin, &grad, gap);
  double plateau_best = loss;
  int plateau_start = 0;

  RestartOutcome out;
  for (int it = 0; it < params.max_iters; ++it) {
    if (gap > 0.0 && gap >= 0.5 * margin && verify(objective, x, target)) {
      out.realized = true;
      out.iterations = it;
      break;
    }
    double norm = 0.0;
    for (double g : grad) norm += g * g;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;

    for (std::size_t t = 0; t < x.size(); ++t) trial[t] = x[t] - step * grad[t] / norm;
    double trial_gap = 0.0;
    const double trial_loss = objective.evaluate(trial, margin, nullptr, trial_gap);
    if (trial_loss < loss) {
      x.swap(trial);
      loss = objective.evaluate(x, margin, &grad, gap);
      step *= 1.2;
    } else {
      step *= 0.5;
      if (step < 1e-12) step = params.initial_step;
    }

    if (loss < plateau_best * (1.0 - 1e-3)) {
      plateau_best = loss;
      plateau_start = it;
    } else if (it - plateau_start >= params.plateau_iters) {
      if (margin > params.margin_floor) {
        margin = std::max(params.margin_floor, 0.5 * margin);
        loss = objective.evaluate(x, margin, &grad, gap);
      }
      plateau_best = loss;
      plateau_start = it;
      step = params.initial_step;
    }
    out.iterations = it + 1;
  }
  out.margin = margin;
  out.relative_gap = relative(gap, x);
  out.x = std::move(x);
  return out;
}

}  // namespace

double target_margin(const Configuration& c, const RankTable& target) {
  if (c.n() != target.rows() || c.m() != target.cols()) throw ShapeError("configuration does not match table shape");
  const auto order = target.cells_by_rank();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const double a = squared_distance(c.P[static_cast<std::size_t>(order[k].row)], c.Q[static_cast<std::size_t>(order[k].col)]);
    const double b =
        squared_distance(c.P[static_cast<std::size_t>(order[k + 1].row)], c.Q[static_cast<std::size_t>(order[k + 1].col)]);
    best = std::min(best, b - a);
  }
  return best;
}

SearchResult search_realization(const RankTable& target, int dim, const SearchParams& params) {
  if (dim < 1) throw InvalidArgument("search: dimension must be positive");
  params.validate();
  HingeObjective objective(target, dim);

  SearchResult result;
  RestartOutcome best;
  for (int r = 0; r < params.restarts; ++r) {
    RestartOutcome outcome = run_restart(objective, target, dim, params, derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    result.restarts_run = r + 1;
    if (outcome.realized) {
      result.status = SearchStatus::realized;
      result.restart = r;
      result.iterations = outcome.iterations;
      best = std::move(outcome);
      break;
    }
    if (best.x.empty() || outcome.relative_gap > best.relative_gap) best = std::move(outcome);
  }
  result.best = objective.to_configuration(best.x);
  result.min_margin = target_margin(result.best, target);
  result.final_margin = best.margin;
  return result;
}

}  // namespace distorder
