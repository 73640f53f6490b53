#pragma once

namespace userdp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace userdp
