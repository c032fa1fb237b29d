#pragma once

namespace schatten {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputSchema = "schattenlab/v1";

}  // namespace schatten
