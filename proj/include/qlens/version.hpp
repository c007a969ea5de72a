#pragma once

namespace qlens {

inline constexpr const char* kToolVersion = "1.0.0";

} // namespace qlens
