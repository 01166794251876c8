#ifndef CASCADE_CLI_HPP
#define CASCADE_CLI_HPP

#include <string>
#include <vector>

namespace cascade {

/// Entry point behind the `cascade` binary; exposed so tests can drive the
/// command surface in-process.  Returns 0 on success, 1 on validation or
/// runtime failure, 2 on configuration errors.
int cli_main(const std::vector<std::string>& args);

} // namespace cascade

#endif
