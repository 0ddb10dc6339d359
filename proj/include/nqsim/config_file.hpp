#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nqsim {

/// Parsed scenario file: flat `key = value` lines plus optional scripted-run
/// sections. Format:
///
///   lambda1 = 0.4          # flat scalars, '#' starts a comment
///   model = or
///   [thresholds]           # t1/t2 key = value pairs (also land in scalars)
///   t1 = 5
///   [arrivals]             # one "time type" pair per line, type in {1,2}
///   0 1
///   [z1]                   # one jump time per line
///   10
///   [z2]
///   5
///   6
///
/// Numeric parsing is locale-independent with '.' as the decimal separator.
struct ParsedConfig {
    std::map<std::string, std::string> scalars;
    std::vector<std::pair<double, int>> arrivals;  ///< (time, type)
    std::vector<double> z1_jumps;
    std::vector<double> z2_jumps;
    bool has_script = false;  ///< any scripted section appeared

    bool has(const std::string& key) const { return scalars.count(key) != 0; }
    double number(const std::string& key) const;  ///< throws UsageError
    std::string text(const std::string& key) const;
};

/// Throws UsageError on malformed lines, unknown sections, or bad numbers.
ParsedConfig parse_config_file(std::istream& in);
ParsedConfig parse_config_file(const std::string& path);  ///< throws IoError

/// Locale-independent double parse of a full token; throws UsageError.
double parse_number(const std::string& token, const std::string& what);

}  // namespace nqsim
