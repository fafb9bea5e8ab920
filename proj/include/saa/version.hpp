#pragma once

namespace saa {

inline constexpr const char* version = "0.1.0";

}  // namespace saa
