#pragma once

namespace chessboard {

inline constexpr const char* kToolName = "chessboard-bisect";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace chessboard
