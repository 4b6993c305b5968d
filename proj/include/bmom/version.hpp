#pragma once

namespace bmom {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "bmom-report/1";

}  // namespace bmom
