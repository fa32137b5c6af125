#pragma once

// Step-by-step evaluation of the impossibility argument on a concrete
// (d+1, d+2) configuration in R^d.
//
// The argument is a proof by contradiction, so its premises never all hold
// on real input. In diagnostic mode every geometric step is still computed
// so the trace shows which consequence breaks and by how much.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "distorder/configuration.hpp"

namespace distorder {

enum class StepStatus { pass, fail, not_evaluated };

const char* to_string(StepStatus s);

struct AuditStep {
  std::string name;
  StepStatus status = StepStatus::not_evaluated;
  // Signed margin of the step's claim (positive when it holds); NaN when the
  // step has no scalar margin or was not evaluated.
  double margin = 0.0;
  std::string summary;
  // Named numeric objects (points, coordinates, margins) computed by the step.
  std::vector<std::pair<std::string, std::vector<double>>> objects;
  std::vector<std::string> notes;
};

struct AuditTrace {
  int dim = 0;
  bool halted = false;  // degeneracy stopped the trace after step 1
  std::vector<AuditStep> steps;

  const AuditStep& step(const std::string& name) const;
};

struct AuditOptions {
  double rel_tol = kDefaultRelTol;
  // Evaluate the geometric steps even after the chain check fails.
  bool diagnostic = true;
  int halfspace_samples = 1000;
  std::uint64_t seed = 0;
};

// Step names, in order: degeneracy, definition-check, observation-1,
// observation-2, lemma-instance-1, lemma-instance-2, lemma-instance-3,
// sphere-q0, sphere-qd1, same-side-H, halfspace-lemma, final-contradiction.
// Throws ShapeError unless |P| = d+1 and |Q| = d+2.
AuditTrace audit(const Configuration& c, const AuditOptions& options = {});

const std::vector<std::string>& audit_step_names();

}  // namespace distorder
