#pragma once

namespace maxahp {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace maxahp
