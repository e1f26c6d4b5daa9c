#pragma once

namespace biorth {

inline constexpr const char* kVersion = "0.1.0";

}
