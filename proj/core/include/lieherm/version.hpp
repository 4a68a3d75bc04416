#pragma once

namespace lieherm {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace lieherm
