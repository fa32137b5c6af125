#pragma once

// Numerical search for point configurations inducing a target order.
//
// The objective is the hinge loss over consecutive ranks,
//   sum_k max(0, margin + D(c_k) - D(c_{k+1})),
// where c_k is the cell of rank k and D the squared distance of its pair.
// Descent is first order with an accept/reject adaptive step, random
// restarts, and margin annealing on plateaus. A candidate is declared
// realized only after induced_order reproduces the target exactly.
//
// "exhausted" is evidence, never proof, that the order is not realizable.

#include <cstdint>
#include <string>

#include "distorder/configuration.hpp"
#include "distorder/rank_table.hpp"

namespace distorder {

struct SearchParams {
  int restarts = 32;
  int max_iters = 2000;
  // Target separation of consecutive squared distances; coordinates start
  // in [-1, 1]^dim, so this is relative to unit scale.
  double margin = 1e-3;
  // Annealing halves the margin on a plateau, never below this.
  double margin_floor = 1e-6;
  int plateau_iters = 150;
  double initial_step = 0.05;
  std::uint64_t seed = 0;

  // Throws InvalidArgument on restarts < 1, max_iters < 1 or margin <= 0.
  void validate() const;
};

enum class SearchStatus { realized, exhausted };

const char* to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  // Realizing configuration, or the candidate with the largest scale
  // relative minimum gap when exhausted.
  Configuration best;
  // Smallest consecutive squared-distance gap of `best` in target order;
  // negative when some consecutive pair is inverted.
  double min_margin = 0.0;
  // Margin in force when the search stopped (after annealing).
  double final_margin = 0.0;
  int restart = -1;     // index of the successful restart
  int iterations = 0;   // iterations of the successful restart
  int restarts_run = 0;
};

SearchResult search_realization(const RankTable& target, int dim, const SearchParams& params);

// Consecutive gaps D(c_{k+1}) - D(c_k) in the target order, minimum over k.
double target_margin(const Configuration& c, const RankTable& target);

}  // namespace distorder
