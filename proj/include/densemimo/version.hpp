#pragma once

namespace densemimo {

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kRngId = "xoshiro256pp-sm64kdf-v1";

}  // namespace densemimo
