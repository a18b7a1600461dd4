#include "emostrat/splitter.hpp"

#include <algorithm>
#include <span>

#include "emostrat/error.hpp"
#include "emostrat/splitmix64.hpp"

namespace emostrat {

std::size_t Quota::operator[](Split s) const noexcept {
  switch (s) {
    case Split::Train:
      return train;
    case Split::Dev:
      return dev;
    case Split::Test:
      return test;
  }
  return 0;
}

Quota apportion(std::size_t size, const SplitRatios& ratios) {
  // Seat order among equal remainders.
  static constexpr std::array<Split, 3> kTieOrder = {Split::Dev, Split::Test,
                                                     Split::Train};
  const auto n = static_cast<std::int64_t>(size);

  std::array<std::int64_t, 3> seats{};
  std::array<std::int64_t, 3> remainder{};
  std::int64_t assigned = 0;
  for (auto s : kAllSplits) {
    const std::int64_t share = n * ratios.units(s);
    seats[index(s)] = share / SplitRatios::kUnitsPerOne;
    remainder[index(s)] = share % SplitRatios::kUnitsPerOne;
    assigned += seats[index(s)];
  }

  std::array<Split, 3> order = kTieOrder;
  std::stable_sort(order.begin(), order.end(), [&](Split a, Split b) {
    return remainder[index(a)] > remainder[index(b)];
  });
  for (std::int64_t left = n - assigned, k = 0; left > 0; --left, ++k) {
    ++seats[index(order[static_cast<std::size_t>(k % 3)])];
  }

  return Quota{static_cast<std::size_t>(seats[0]),
               static_cast<std::size_t>(seats[1]),
               static_cast<std::size_t>(seats[2])};
}

QuotaPlan plan_quotas(const std::map<EmotionSequence, std::size_t>& sizes,
                      const SplitRatios& ratios, std::size_t pooled_size) {
  QuotaPlan plan;
  plan.ratios = ratios;
  for (const auto& [seq, size] : sizes) {
    plan.strata.emplace(seq, apportion(size, ratios));
  }
  plan.pooled = apportion(pooled_size, ratios);
  return plan;
}

namespace {

PartitionMetadata partial_metadata(const SplitRatios& ratios,
                                   std::uint64_t seed) {
  PartitionMetadata m;
  m.seed = seed;
  m.ratios = ratios;
  m.method = std::string(kStratifiedMethod);
  m.tool_version = tool_version();
  return m;
}

void require_ascending(const std::vector<std::string>& ids,
                       std::string_view what) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (!(ids[i - 1] < ids[i])) {
      throw PartitionError(std::string(what) +
                           ": ids must be strictly ascending, got '" +
                           ids[i - 1] + "' before '" + ids[i] + "'");
    }
  }
}

void deal(std::vector<std::string> ids, const Quota& quota, SplitMix64& rng,
          Partition& out) {
  shuffle(std::span<std::string>(ids), rng);
  std::size_t pos = 0;
  for (auto s : kAllSplits) {
    for (std::size_t k = 0; k < quota[s]; ++k, ++pos) {
      out.assignments.emplace(std::move(ids[pos]), s);
    }
  }
}

}  // namespace

Partition stratified_split(
    const std::map<EmotionSequence, std::vector<std::string>>& strata,
    const QuotaPlan& plan, std::uint64_t seed) {
  if (strata.size() != plan.strata.size()) {
    throw PartitionError("quota plan covers " +
                         std::to_string(plan.strata.size()) +
                         " strata but " + std::to_string(strata.size()) +
                         " were given");
  }
  Partition out;
  out.metadata = partial_metadata(plan.ratios, seed);
  SplitMix64 rng(seed);
  std::size_t expected = 0;
  for (const auto& [seq, ids] : strata) {
    auto q = plan.strata.find(seq);
    if (q == plan.strata.end()) {
      throw PartitionError("quota plan has no entry for stratum " +
                           seq.to_string());
    }
    if (q->second.total() != ids.size()) {
      throw PartitionError("quota for stratum " + seq.to_string() +
                           " does not match its size");
    }
    require_ascending(ids, "stratum " + seq.to_string());
    deal(ids, q->second, rng, out);
    expected += ids.size();
  }
  if (out.assignments.size() != expected) {
    throw PartitionError("a dialogue id appears in more than one stratum");
  }
  return out;
}

Partition random_split(const std::vector<std::string>& ids,
                       const SplitRatios& ratios, std::uint64_t seed) {
  require_ascending(ids, "pooled set");
  Partition out;
  out.metadata = partial_metadata(ratios, seed);
  SplitMix64 rng(seed);
  deal(ids, apportion(ids.size(), ratios), rng, out);
  return out;
}

Partition merge(const Partition& a, const Partition& b) {
  if (!(a.metadata == b.metadata)) {
    throw PartitionError("cannot merge partitions with different metadata");
  }
  Partition out = a;
  for (const auto& [id, split] : b.assignments) {
    if (!out.assignments.emplace(id, split).second) {
      throw PartitionError("dialogue id '" + id +
                           "' is assigned by both partitions");
    }
  }
  return out;
}

SplitOutcome split_corpus_detailed(const Corpus& corpus,
                                   const SplitRatios& ratios,
                                   std::int64_t threshold,
                                   std::uint64_t seed) {
  const auto table = build_frequency_table(corpus);
  const auto strata = split_by_frequency(corpus, table, threshold);

  std::map<EmotionSequence, std::size_t> sizes;
  for (const auto& [seq, ids] : strata.frequent) sizes.emplace(seq, ids.size());

  SplitOutcome out;
  out.plan = plan_quotas(sizes, ratios, strata.non_frequent.size());
  out.strata_count = strata.frequent.size();
  out.frequent_dialogues = strata.frequent_count();
  out.pooled_dialogues = strata.non_frequent.size();

  out.partition = merge(stratified_split(strata.frequent, out.plan, seed),
                        random_split(strata.non_frequent, ratios, seed));
  out.partition.metadata.threshold = threshold;

  if (out.partition.assignments.size() != corpus.dialogues.size()) {
    throw PartitionError("partition does not cover the corpus");
  }
  return out;
}

Partition split_corpus(const Corpus& corpus, const SplitRatios& ratios,
                       std::int64_t threshold, std::uint64_t seed) {
  return split_corpus_detailed(corpus, ratios, threshold, seed).partition;
}

}  // namespace emostrat
