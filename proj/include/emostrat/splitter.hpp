#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emostrat/corpus.hpp"
#include "emostrat/partition.hpp"
#include "emostrat/strata.hpp"

namespace emostrat {

struct Quota {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;

  std::size_t operator[](Split s) const noexcept;
  std::size_t total() const noexcept { return train + dev + test; }

  bool operator==(const Quota&) const = default;
};

// Largest-remainder apportionment of `size` items: floor each share, then
// give the leftover items one at a time to the largest fractional
// remainders. Equal remainders are served Dev, then Test, then Train.
// Shares are computed exactly in 1e-9 units of the ratios.
Quota apportion(std::size_t size, const SplitRatios& ratios);

struct QuotaPlan {
  SplitRatios ratios;
  std::map<EmotionSequence, Quota> strata;
  Quota pooled;
};

QuotaPlan plan_quotas(const std::map<EmotionSequence, std::size_t>& sizes,
                      const SplitRatios& ratios,
                      std::size_t pooled_size = 0);

// Shuffles each stratum's (ascending) id list and deals the first
// n_train ids to Train, the next n_dev to Dev and the rest to Test. Strata
// are visited in key order and share one generator seeded with `seed`.
// Throws PartitionError when plan and strata disagree or a stratum's ids
// are not strictly ascending.
Partition stratified_split(
    const std::map<EmotionSequence, std::vector<std::string>>& strata,
    const QuotaPlan& plan, std::uint64_t seed);

// The pooled set treated as a single stratum with its own generator seeded
// with `seed`.
Partition random_split(const std::vector<std::string>& ids,
                       const SplitRatios& ratios, std::uint64_t seed);

// Union of two partial partitions with disjoint domains and equal metadata.
Partition merge(const Partition& a, const Partition& b);

struct SplitOutcome {
  Partition partition;
  QuotaPlan plan;
  std::size_t strata_count = 0;
  std::size_t frequent_dialogues = 0;
  std::size_t pooled_dialogues = 0;
};

SplitOutcome split_corpus_detailed(const Corpus& corpus,
                                   const SplitRatios& ratios,
                                   std::int64_t threshold, std::uint64_t seed);

Partition split_corpus(const Corpus& corpus, const SplitRatios& ratios,
                       std::int64_t threshold, std::uint64_t seed);

}  // namespace emostrat
