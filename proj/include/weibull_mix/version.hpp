#pragma once

namespace wmix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wmix
