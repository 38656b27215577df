#pragma once

namespace conelab {
inline constexpr const char* kVersion = "0.1.0";
}
