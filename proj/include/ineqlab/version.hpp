#pragma once

namespace ineqlab {

inline constexpr const char* kVersion = "0.1.0";

}
