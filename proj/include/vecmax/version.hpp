#pragma once

namespace vecmax {

inline constexpr const char* kLibraryName = "vecmax";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace vecmax
