#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmcdm {

inline constexpr const char* kStoreEnvVar = "GMCDM_STORE";
inline constexpr const char* kDeterministicTimestamp = "1970-01-01T00:00:00Z";

/// Entry point behind the `gmcdm` binary. `args` includes the program name.
/// Returns 0 on success, 1 on validation or method errors, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmcdm
