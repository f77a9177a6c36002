#pragma once

#include <string_view>

namespace graphdef {

/// Outcome of a definability search. ResourceExhausted means the budget ran
/// out first; it is never a decision.
enum class Decision { Definable, NotDefinable, ResourceExhausted };

constexpr std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Definable: return "definable";
    case Decision::NotDefinable: return "not-definable";
    case Decision::ResourceExhausted: return "resource-exhausted";
  }
  return "";
}

}  // namespace graphdef
