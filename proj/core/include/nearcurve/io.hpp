#pragma once

#include "nearcurve/asymptotics.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nearcurve {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Shortest representation that round-trips to the same double.
std::string format_double(double x);

// RFC 4180: quoted iff the field contains a comma, quote or newline.
std::string csv_quote(const std::string& field);

std::uint64_t fnv1a64(std::string_view s);
std::string fnv1a64_hex(std::string_view s);  // 16 lowercase hex digits

// '#'-prefixed metadata (curve, interval, config digest, version), one
// header line, one row per line. Output depends only on the table, so
// repeated runs of the same scan produce identical bytes.
void write_scan_csv(std::ostream& out, const ScanTable& table);
void write_scan_jsonl(std::ostream& out, const ScanTable& table);

// Inverse of write_scan_csv, used by the fit subcommand. Rejects streams
// whose header differs from the writer's.
ScanTable read_scan_csv(std::istream& in);

}  // namespace nearcurve
