#pragma once

#define BGM_VERSION "1.0.0"

namespace bgm {
inline constexpr const char* version() { return BGM_VERSION; }
}
