#pragma once

#include <optional>
#include <string_view>

namespace msx {

enum class Verdict {
  NotAState,
  NptEntangled,
  BoundEntangled,
  Separable,
  Undetermined,
};

inline constexpr Verdict kAllVerdicts[] = {Verdict::NotAState, Verdict::NptEntangled,
                                           Verdict::BoundEntangled, Verdict::Separable,
                                           Verdict::Undetermined};

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::NotAState: return "NotAState";
    case Verdict::NptEntangled: return "NptEntangled";
    case Verdict::BoundEntangled: return "BoundEntangled";
    case Verdict::Separable: return "Separable";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

constexpr std::optional<Verdict> verdict_from_string(std::string_view s) noexcept {
  for (Verdict v : kAllVerdicts)
    if (to_string(v) == s) return v;
  return std::nullopt;
}

}  // namespace msx
