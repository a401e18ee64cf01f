#pragma once

namespace losslin {
inline constexpr const char* kVersion = "1.0.0";
}
