#pragma once

namespace latticewave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace latticewave
