#include "emostrat/emotion.hpp"

#include <string>

#include "emostrat/error.hpp"

namespace emostrat {

namespace {

constexpr std::array<std::string_view, kNumEmotions> kNames = {
    "Neutral", "Fearful", "Dissatisfied", "Apologetic",
    "Abusive", "Excited", "Satisfied",
};

constexpr std::array<std::string_view, kNumEmotions> kShortNames = {
    "Neu.", "Fea.", "Dis.", "Apo.", "Abu.", "Exc.", "Sat.",
};

}  // namespace

std::string_view name(Emotion e) noexcept { return kNames[index(e)]; }

std::string_view short_name(Emotion e) noexcept {
  return kShortNames[index(e)];
}

Emotion emotion_from_code(std::int64_t value) {
  if (value < 0 || value >= static_cast<std::int64_t>(kNumEmotions)) {
    throw ParseError("label out of range: " + std::to_string(value) +
                     " (expected 0..6)");
  }
  return static_cast<Emotion>(value);
}

}  // namespace emostrat
