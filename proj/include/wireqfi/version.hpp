#pragma once

namespace wireqfi {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace wireqfi
