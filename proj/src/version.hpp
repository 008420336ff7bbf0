#pragma once

namespace hubo {

inline constexpr const char* kVersion = "0.1.0";

// Bumped when any on-disk schema (instance files, result records,
// report CSVs) changes shape.
inline constexpr int kInstanceFormatVersion = 1;
inline constexpr int kRecordSchemaVersion = 1;

}  // namespace hubo
