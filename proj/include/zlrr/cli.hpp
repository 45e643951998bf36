#pragma once

namespace zlrr {

/// Dispatches argv to a subcommand. Returns 0 on success, 1 on usage errors,
/// 2 on validation or budget errors raised while computing.
int run_cli(int argc, const char* const* argv);

}  // namespace zlrr
