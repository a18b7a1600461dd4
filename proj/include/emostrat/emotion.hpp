#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace emostrat {

// Seven-class emotion scheme for user turns. Codes are fixed and appear
// verbatim in every file format this library reads or writes.
enum class Emotion : std::uint8_t {
  Neutral = 0,
  Fearful = 1,
  Dissatisfied = 2,
  Apologetic = 3,
  Abusive = 4,
  Excited = 5,
  Satisfied = 6,
};

inline constexpr std::size_t kNumEmotions = 7;

inline constexpr std::array<Emotion, kNumEmotions> kAllEmotions = {
    Emotion::Neutral,  Emotion::Fearful, Emotion::Dissatisfied,
    Emotion::Apologetic, Emotion::Abusive, Emotion::Excited,
    Emotion::Satisfied,
};

constexpr int code(Emotion e) noexcept { return static_cast<int>(e); }
constexpr std::size_t index(Emotion e) noexcept {
  return static_cast<std::size_t>(e);
}

std::string_view name(Emotion e) noexcept;
std::string_view short_name(Emotion e) noexcept;

// Throws ParseError("label out of range ...") for codes outside 0..6.
Emotion emotion_from_code(std::int64_t value);

}  // namespace emostrat
