#pragma once

namespace smoothprog {

inline constexpr const char* kVersion = "0.1.0";

} // namespace smoothprog
