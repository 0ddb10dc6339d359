#include "nqsim/config_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "nqsim/errors.hpp"

namespace nqsim {

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

double parse_number(const std::string& token, const std::string& what) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw UsageError("bad number for " + what + ": '" + token + "'");
    }
    return value;
}

double ParsedConfig::number(const std::string& key) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) throw UsageError("missing config key: " + key);
    return parse_number(it->second, key);
}

std::string ParsedConfig::text(const std::string& key) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) throw UsageError("missing config key: " + key);
    return it->second;
}

ParsedConfig parse_config_file(std::istream& in) {
    ParsedConfig out;
    enum class Section { Flat, Thresholds, Arrivals, Z1, Z2 };
    Section section = Section::Flat;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);

        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError(where + ": unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name == "thresholds") {
                section = Section::Thresholds;
            } else if (name == "arrivals") {
                section = Section::Arrivals;
                out.has_script = true;
            } else if (name == "z1") {
                section = Section::Z1;
                out.has_script = true;
            } else if (name == "z2") {
                section = Section::Z2;
                out.has_script = true;
            } else {
                throw UsageError(where + ": unknown section [" + name + "]");
            }
            continue;
        }

        switch (section) {
            case Section::Flat:
            case Section::Thresholds: {
                const auto eq = line.find('=');
                if (eq == std::string::npos) {
                    throw UsageError(where + ": expected 'key = value'");
                }
                const std::string key = trim(line.substr(0, eq));
                const std::string value = trim(line.substr(eq + 1));
                if (key.empty() || value.empty()) {
                    throw UsageError(where + ": empty key or value");
                }
                out.scalars[key] = value;
                break;
            }
            case Section::Arrivals: {
                std::istringstream fields(line);
                std::string time_tok;
                std::string type_tok;
                std::string extra;
                if (!(fields >> time_tok >> type_tok) || (fields >> extra)) {
                    throw UsageError(where + ": expected 'time type'");
                }
                const double time = parse_number(time_tok, "arrival time");
                const double type = parse_number(type_tok, "arrival type");
                if (type != 1.0 && type != 2.0) {
                    throw UsageError(where + ": arrival type must be 1 or 2");
                }
                out.arrivals.emplace_back(time, static_cast<int>(type));
                break;
            }
            case Section::Z1:
                out.z1_jumps.push_back(parse_number(line, "z1 jump time"));
                break;
            case Section::Z2:
                out.z2_jumps.push_back(parse_number(line, "z2 jump time"));
                break;
        }
    }
    return out;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config_file(in);
}

}  // namespace nqsim
