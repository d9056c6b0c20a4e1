#pragma once

#include <cstddef>
#include <vector>

namespace plates {

enum class ExecPolicy { Serial, Parallel };

// Number of worker threads, honouring the PLATE_HOMOG_THREADS cap.
int max_threads();

// Deterministic pairwise reduction: the summation tree depends only on the
// size of the input, never on the thread count, so serial and parallel
// evaluations of the same partials produce bitwise identical sums.
double pairwise_sum(const std::vector<double>& xs);

}  // namespace plates
