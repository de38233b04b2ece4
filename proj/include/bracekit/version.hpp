#pragma once

namespace bracekit {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kFormatTag = "bracekit/1";

} // namespace bracekit
