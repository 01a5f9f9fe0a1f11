#pragma once

namespace ppclab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCsvBanner = "# ppc-lab v0.1.0";

}  // namespace ppclab
