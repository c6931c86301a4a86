#pragma once

namespace fiberlab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fiberlab
