#pragma once

namespace wrl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wrl
