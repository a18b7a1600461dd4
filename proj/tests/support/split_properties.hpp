#pragma once

// Invariant checks on split_corpus output, shared by the unit tests and the
// acceptance binary. Each returns a list of human-readable failures; empty
// means the property holds.

#include <cstdint>
#include <string>
#include <vector>

#include "emostrat/corpus.hpp"
#include "emostrat/partition.hpp"

namespace emostrat::testing {

std::vector<std::string> check_disjoint_cover(const Corpus& corpus,
                                              const Partition& partition);

// Recomputes each sequence's count and membership independently of the
// library and checks every frequent stratum's per-split count against
// size * ratio, plus the pooled set.
std::vector<std::string> check_quota_fidelity(const Corpus& corpus,
                                              const Partition& partition,
                                              std::int64_t threshold);

// |split size - N * ratio| <= strata + 1.
std::vector<std::string> check_global_fidelity(const Corpus& corpus,
                                               const Partition& partition,
                                               std::int64_t threshold);

}  // namespace emostrat::testing
