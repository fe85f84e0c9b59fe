#pragma once

namespace ectl {

inline constexpr const char* kToolName = "ensemblectl";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace ectl
