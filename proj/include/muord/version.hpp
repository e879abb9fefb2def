#pragma once

namespace muord {
inline constexpr const char* kVersion = "0.1.0";
}
