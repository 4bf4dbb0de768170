#pragma once

namespace fermirmt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fermirmt
