#pragma once

namespace wllab::cli {

// Exit codes, stable across releases:
//   0 success
//   1 usage error
//   2 input parse error or shape mismatch
//   3 a resource cap was exceeded
//   4 a similarity decision ran out of exact strategies
//   5 a suite expectation failed
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kParse = 2;
inline constexpr int kCaps = 3;
inline constexpr int kUndecided = 4;
inline constexpr int kExpectationFailed = 5;

int run(int argc, const char* const* argv);

}  // namespace wllab::cli
