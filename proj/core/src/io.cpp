#include "nearcurve/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace nearcurve {

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view s) {
  std::uint64_t h = fnv1a64(s);
  const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

constexpr const char* kHeader = "curve_id,Q,delta,N,main_term,residual,ambiguous,method,elapsed_ms";

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char b[8];
          std::snprintf(b, sizeof b, "\\u%04x", c);
          out += b;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

void write_scan_csv(std::ostream& out, const ScanTable& table) {
  out << "# curve: " << table.curve_spec << "\n";
  out << "# interval: " << table.interval_text << "\n";
  out << "# config: " << table.config_digest << "\n";
  out << "# version: " << kToolVersion << "\n";
  out << kHeader << "\n";
  for (const ScanRow& r : table.rows) {
    out << csv_quote(r.curve_id) << ',' << r.Q << ',' << r.delta_text << ',' << r.N << ','
        << format_double(r.main_term) << ',' << format_double(r.residual) << ',' << r.ambiguous
        << ',' << r.method << ',' << format_double(r.elapsed_ms) << "\n";
  }
}

void write_scan_jsonl(std::ostream& out, const ScanTable& table) {
  out << "{\"curve\":" << json_quote(table.curve_spec)
      << ",\"interval\":" << json_quote(table.interval_text) << ",\"config\":\""
      << table.config_digest << "\",\"version\":\"" << kToolVersion << "\"}\n";
  for (const ScanRow& r : table.rows) {
    out << "{\"curve_id\":" << json_quote(r.curve_id) << ",\"Q\":" << r.Q
        << ",\"delta\":" << json_quote(r.delta_text) << ",\"N\":" << r.N
        << ",\"main_term\":" << format_double(r.main_term)
        << ",\"residual\":" << format_double(r.residual) << ",\"ambiguous\":" << r.ambiguous
        << ",\"method\":" << json_quote(r.method)
        << ",\"elapsed_ms\":" << format_double(r.elapsed_ms)
        << ",\"regime_ok\":" << (r.regime_ok ? "true" : "false") << "}\n";
  }
}

ScanTable read_scan_csv(std::istream& in) {
  ScanTable table;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto tagged = [&line](const char* tag) -> std::optional<std::string> {
        std::string_view v(line);
        std::string_view t(tag);
        if (v.substr(0, t.size()) == t) return std::string(v.substr(t.size()));
        return std::nullopt;
      };
      if (auto v = tagged("# curve: ")) table.curve_spec = *v;
      else if (auto w = tagged("# interval: ")) table.interval_text = *w;
      else if (auto c = tagged("# config: ")) table.config_digest = *c;
      continue;
    }
    if (!saw_header) {
      if (line != kHeader) throw std::invalid_argument("read_scan_csv: unexpected header");
      saw_header = true;
      continue;
    }
    std::vector<std::string> f = split_csv(line);
    if (f.size() != 9) throw std::invalid_argument("read_scan_csv: wrong field count");
    ScanRow r;
    r.curve_id = f[0];
    r.Q = std::stoll(f[1]);
    r.delta_text = f[2];
    auto d = parse_rational(f[2]);
    if (!d) throw std::invalid_argument("read_scan_csv: unparsable delta: " + f[2]);
    r.delta = to_double(*d);
    r.N = std::stoll(f[3]);
    r.main_term = std::stod(f[4]);
    r.residual = std::stod(f[5]);
    r.ambiguous = std::stoll(f[6]);
    r.method = f[7];
    r.elapsed_ms = std::stod(f[8]);
    r.regime_ok = r.delta > 1.0 / static_cast<double>(r.Q);
    table.rows.push_back(std::move(r));
  }
  if (!saw_header) throw std::invalid_argument("read_scan_csv: missing header");
  return table;
}

}  // namespace nearcurve
