#pragma once

namespace nmcdse {

inline constexpr const char* kToolVersion = "1.0.0";

// Bumped whenever the signature/recommendation/manifest JSON layout or the
// sweep CSV columns change.
inline constexpr int kSchemaVersion = 1;

}  // namespace nmcdse
