#pragma once

namespace molgrating {
inline constexpr const char* kVersion = "0.1.0";
}
