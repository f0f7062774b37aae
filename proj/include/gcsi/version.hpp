#pragma once

namespace gcsi {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gcsi
