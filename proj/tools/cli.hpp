#pragma once

// The gzrep command line: verification suites, wave-function grids and N = 2 oracle comparisons.

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace gzrep::cli {

enum ExitStatus { kPass = 0, kAccuracyFailure = 1, kUsageError = 2 };

/// Runs one command; artifacts go to --out / --report files or to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "0.5,-0.5" or "0.5+0.2i,-0.5-0.2i"; throws ConfigurationError on malformed input.
std::vector<std::complex<double>> parse_complex_list(const std::string& text);

/// One entry per coordinate, each either a value or start:stop:count; Cartesian product, x_1 slowest.
std::vector<std::vector<double>> parse_grid(const std::string& text, int levels);

/// Explicit points "x1,x2;x1,x2".
std::vector<std::vector<double>> parse_points(const std::string& text, int levels);

/// %.17g, the CSV number format.
std::string format_double(double v);

}  // namespace gzrep::cli
