#pragma once

#include <string_view>

namespace bmcheck {

enum class Verdict { pass, reject };

constexpr std::string_view to_string(Verdict v) {
  return v == Verdict::pass ? "pass" : "reject";
}

}  // namespace bmcheck
