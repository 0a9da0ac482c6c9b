#pragma once

namespace bolab::cli {

// Entry point of the `bolab` binary: parses argv, dispatches one subcommand,
// and returns the process exit code. 0 = success / all checks passed,
// 1 = a check or the run itself failed, 2 = usage or config error.
//
// Subcommands: solve, gauge-check, verify-lattice, nf-residual, smoothing,
// strichartz, difference. Every subcommand accepts --config FILE (JSON with
// a required "version": 1; unknown keys are rejected) whose values fill in
// any option not given on the command line — explicit flags always win.
// --threads caps worker threads; the BOLAB_THREADS environment variable is
// the fallback when the flag is absent. All output is UTF-8 and, for a fixed
// seed and config, byte-identical across runs.
int run(int argc, const char* const* argv);

} // namespace bolab::cli
