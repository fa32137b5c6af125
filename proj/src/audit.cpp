#include "distorder/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "distorder/errors.hpp"
#include "distorder/lemmas.hpp"
#include "distorder/rank_table.hpp"

namespace distorder {

const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::pass:
      return "pass";
    case StepStatus::fail:
      return "fail";
    case StepStatus::not_evaluated:
      return "not-evaluated";
  }
  return "?";
}

const std::vector<std::string>& audit_step_names() {
  static const std::vector<std::string> names = {
      "degeneracy",       "definition-check", "observation-1", "observation-2",
      "lemma-instance-1", "lemma-instance-2", "lemma-instance-3", "sphere-q0",
      "sphere-qd1",       "same-side-H",      "halfspace-lemma",  "final-contradiction"};
  return names;
}

const AuditStep& AuditTrace::step(const std::string& name) const {
  for (const auto& s : steps)
    if (s.name == name) return s;
  throw InvalidArgument("audit trace has no step named " + name);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::string cell_text(Cell c) { return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")"; }

double distance_gap(const Configuration& c, const Comparison& cmp) {
  const auto d = [&](Cell x) {
    return squared_distance(c.P[static_cast<std::size_t>(x.row)], c.Q[static_cast<std::size_t>(x.col)]);
  };
  return d(cmp.greater) - d(cmp.lesser);
}

// Pass iff every comparison holds; margin is the smallest squared-distance
// gap in the asserted direction.
void comparison_step(AuditStep& step, const Configuration& c, const RankTable& t, const ComparisonSet& set) {
  double worst = std::numeric_limits<double>::infinity();
  int broken = 0;
  for (const auto& cmp : set) {
    const double gap = distance_gap(c, cmp);
    worst = std::min(worst, gap);
    if (!t.less(cmp.lesser, cmp.greater)) {
      ++broken;
      std::ostringstream os;
      os << cell_text(cmp.lesser) << " < " << cell_text(cmp.greater) << " violated, squared-distance gap " << gap;
      step.notes.push_back(os.str());
    }
  }
  step.status = broken == 0 ? StepStatus::pass : StepStatus::fail;
  step.margin = worst;
  step.summary = std::to_string(set.size() - static_cast<std::size_t>(broken)) + "/" + std::to_string(set.size()) +
                 " comparisons hold";
}

void verdict_step(AuditStep& step, std::initializer_list<const Verdict*> verdicts) {
  bool ok = true;
  double margin = std::numeric_limits<double>::infinity();
  std::string summary;
  for (const auto* v : verdicts) {
    ok = ok && v->holds;
    margin = std::min(margin, v->margin);
    step.objects.push_back({v->name, {v->margin}});
    summary += (summary.empty() ? "" : "; ") + v->name + (v->holds ? ": yes" : ": no");
  }
  step.status = ok ? StepStatus::pass : StepStatus::fail;
  step.margin = margin;
  step.summary = summary;
}

}  // namespace

AuditTrace audit(const Configuration& c, const AuditOptions& options) {
  c.validate();
  const int d = c.dim;
  if (c.n() != d + 1 || c.m() != d + 2) {
    throw ShapeError("audit needs |P| = d+1 and |Q| = d+2 in R^d, got |P|=" + std::to_string(c.n()) +
                     " |Q|=" + std::to_string(c.m()) + " d=" + std::to_string(d));
  }
  AuditTrace trace;
  trace.dim = d;
  for (const auto& name : audit_step_names()) trace.steps.push_back(AuditStep{name, StepStatus::not_evaluated, kNaN, "", {}, {}});
  auto step = [&](std::size_t i) -> AuditStep& { return trace.steps[i]; };

  // 1. degeneracy
  std::optional<RankTable> table;
  {
    AuditStep& s = step(0);
    try {
      table = induced_order(c, options.rel_tol);
      Simplex sp(c.P);
      Simplex s0(c.q_without({0}));
      Simplex sl(c.q_without({d + 1}));
      hyperplane_through(c.q_without({0, d + 1}));
      s.status = StepStatus::pass;
      double max_sq = 0.0;
      for (double v : pair_distances(c)) max_sq = std::max(max_sq, v);
      s.margin = min_distance_gap(c) / max_sq;
      s.summary = "distances distinct; P, Q_0, Q_{d+1}, Q' affinely independent";
    } catch (const DegeneracyError& e) {
      s.status = StepStatus::fail;
      s.summary = e.what();
      trace.halted = true;
      return trace;
    }
  }

  // 2. chain predicate on the induced order
  {
    AuditStep& s = step(1);
    comparison_step(s, c, *table, definition_chains(d, ChainReading::displayed));
    s.summary = std::string("unrealizable (displayed chains): ") + (s.status == StepStatus::pass ? "yes" : "no") +
                "; " + s.summary;
    s.notes.push_back(std::string("full-row chains: ") +
                      (is_unrealizable(*table, ChainReading::full_row) ? "satisfied" : "violated"));
    s.objects.push_back({"ranks", std::vector<double>(table->data().begin(), table->data().end())});
  }
  if (!options.diagnostic && step(1).status == StepStatus::fail) return trace;

  // 3-4. observation comparisons
  {
    ComparisonSet part1;
    ComparisonSet part2;
    for (const auto& cmp : observation_comparisons(d)) (cmp.group == 1 ? part1 : part2).push_back(cmp);
    comparison_step(step(2), c, *table, part1);
    comparison_step(step(3), c, *table, part2);
  }

  // 5-7. circumcenter lemma instances
  {
    const auto instances = three_lemma_instances(c, options.rel_tol);
    for (std::size_t k = 0; k < 3; ++k) {
      AuditStep& s = step(4 + k);
      const auto& inst = instances[k];
      s.status = inst.conclusion.interior ? StepStatus::pass : StepStatus::fail;
      s.margin = inst.conclusion.min_coordinate;
      s.summary = inst.claim + (inst.conclusion.interior ? ": yes" : ": no") +
                  "; hypothesis " + (inst.hypothesis.holds ? "holds" : "fails");
      s.objects.push_back({"circumcenter", to_vector(inst.conclusion.circumcenter)});
      s.objects.push_back({"barycentric", to_vector(inst.conclusion.barycentric)});
      s.objects.push_back({"hypothesis", {inst.hypothesis.holds ? 1.0 : 0.0}});
      for (std::size_t i = 0; i < inst.hypothesis.permutations.size(); ++i) {
        std::ostringstream os;
        os << "y_" << i << " (" << inst.y_set << "_" << inst.y_indices[i] << ") sees x in order";
        for (int p : inst.hypothesis.permutations[i]) os << ' ' << p;
        s.notes.push_back(os.str());
      }
    }
  }

  // 8-10. circumspheres and the hyperplane through Q'
  const SphereSteps spheres = sphere_steps(c, options.rel_tol);
  verdict_step(step(7), {&spheres.o0_closer_to_q0, &spheres.q0_in_b0});
  step(7).objects.push_back({"center", to_vector(spheres.s0.center)});
  step(7).objects.push_back({"radius", {spheres.s0.radius}});
  step(7).objects.push_back({"q_{d+1} on S_0 residual", {spheres.q_last_on_s0_residual}});
  verdict_step(step(8), {&spheres.olast_closer_to_q0, &spheres.q_last_outside_b_last});
  step(8).objects.push_back({"center", to_vector(spheres.s_last.center)});
  step(8).objects.push_back({"radius", {spheres.s_last.radius}});
  verdict_step(step(9), {&spheres.same_side_h});
  step(9).objects.push_back({"normal", to_vector(spheres.h.normal)});
  step(9).objects.push_back({"offset", {spheres.h.offset}});

  // 11. halfspace lemma with O = O(P), x_i = q_i, L_0 = H, L_i = M(p_{i-1}, p_i)
  {
    AuditStep& s = step(10);
    const Point o = circumcenter(Simplex(c.P));
    std::vector<Hyperplane> ls{spheres.h};
    for (int i = 1; i <= d; ++i) {
      ls.push_back(bisector(c.P[static_cast<std::size_t>(i - 1)], c.P[static_cast<std::size_t>(i)]));
    }
    const auto xs = c.q_without({d + 1});
    const auto report = halfspace_lemma_check(xs, o, ls, options.halfspace_samples, options.seed, options.rel_tol);
    s.objects.push_back({"O(P)", to_vector(o)});
    if (!report.preconditions_ok) {
      s.status = StepStatus::fail;
      s.summary = "preconditions fail (" + std::to_string(report.failed_preconditions.size()) + ")";
      for (const auto& f : report.failed_preconditions) s.notes.push_back("precondition fails: " + f);
    } else {
      s.status = report.violations == 0 ? StepStatus::pass : StepStatus::fail;
      s.margin = report.worst_min_coordinate;
      s.summary = std::to_string(report.samples) + " samples of the halfspace intersection, " +
                  std::to_string(report.violations) + " outside conv(Q_{d+1})";
    }
  }

  // 12. q_{d+1} in conv(Q_{d+1}) (within B_{d+1}) against q_{d+1} outside B_{d+1}
  {
    AuditStep& s = step(11);
    const Simplex hull(c.q_without({d + 1}));
    const Eigen::VectorXd bary = barycentric(hull, c.Q.back());
    const bool in_hull = inside_closed(bary, options.rel_tol);
    const double ball_margin = spheres.s_last.margin(c.Q.back());
    const bool outside_ball = ball_margin > options.rel_tol * c.scale();
    s.status = in_hull ? StepStatus::pass : StepStatus::fail;
    s.margin = bary.minCoeff();
    s.objects.push_back({"barycentric of q_{d+1} in Q_{d+1}", to_vector(bary)});
    s.objects.push_back({"q_{d+1} distance outside B_{d+1}", {ball_margin}});
    s.summary = std::string("q_{d+1} in conv(Q_{d+1}): ") + (in_hull ? "yes" : "no") +
                "; q_{d+1} outside B_{d+1}: " + (outside_ball ? "yes" : "no") +
                "; contradiction realized: " + (in_hull && outside_ball ? "yes" : "no");
  }
  return trace;
}

}  // namespace distorder
