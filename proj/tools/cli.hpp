#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace pticgof::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `pticgof` invocation. `args` excludes the program name. Results
/// go to `out` unless --out names a file; diagnostics go to `err`.
/// Returns 0 on success, 1 on usage errors, 2 on data errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace pticgof::cli
