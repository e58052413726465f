#pragma once

namespace steadycert {
inline constexpr const char* kVersion = "0.1.0";
}
