#pragma once

namespace qexpand {

// Participates in every cache key, so stored results never leak across
// releases that might change formats or semantics.
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace qexpand
