#pragma once

// Plain-text signal files:
//
//   #barscan-signal v1 m=<int> r=<int>
//   #key=value            (optional provenance: digits, sigma, alpha, seed, nu, xi)
//   <m lines, one sample each, 17 significant digits>

#include <filesystem>
#include <iosfwd>

#include "barscan/forward_model.hpp"

namespace barscan {

void write_signal(std::ostream& out, const ScanSignal& signal);
void write_signal(const std::filesystem::path& path, const ScanSignal& signal);

/// Throws std::runtime_error on a malformed header, unknown version or a
/// sample count that disagrees with m.
ScanSignal read_signal(std::istream& in);
ScanSignal read_signal(const std::filesystem::path& path);

}  // namespace barscan
