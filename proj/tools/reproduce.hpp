#pragma once

#include <string>

namespace dimerfl::cli {

/// Writes the dataset(s) behind one of the bundled reference figures into
/// `outdir` (CSV, plus SVG when `plot` is set). `panel` may be empty to emit
/// every panel of the figure. Returns the number of files written.
int run_reproduce(const std::string& figure, const std::string& panel,
                  const std::string& outdir, bool plot, unsigned jobs);

}  // namespace dimerfl::cli
