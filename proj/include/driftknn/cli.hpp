#pragma once

#include <string>
#include <vector>

namespace driftknn {

//! Run one CLI invocation. `args` holds the arguments after the program
//! name, in command-line order (e.g. {"rates", "--alpha", "1", ...}).
//! Returns the process exit status; diagnostics go to stderr.
//!
//! Subcommands: simulate, classify, rates, bench, realdata. The bench
//! subcommand honors the DRIFTKNN_THREADS environment variable (worker
//! count; unset or 0 means auto).
int cli_dispatch(std::vector<std::string> args);

} // namespace driftknn
