#pragma once

namespace espread {
inline constexpr const char* kVersion = "0.1.0";
}
