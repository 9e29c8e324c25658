#pragma once

namespace plap::cli {

/// Parses and dispatches the CLI. Exit codes: 0 success, 2 usage or
/// validation error, 3 solver failure.
int run_cli(int argc, char** argv);

}  // namespace plap::cli
