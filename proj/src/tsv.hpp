#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"

namespace ssp {

// Shortest round-trip representation; used everywhere a double lands in an
// output artifact so repeated runs are byte-identical.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::uint64_t parse_u64(std::string_view s, const std::string& path, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw input_error(path + ":" + std::to_string(line_no) + ": not a non-negative integer: '" +
                          std::string(s) + "'");
    return v;
}

inline double parse_double(std::string_view s, const std::string& path, std::size_t line_no) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw input_error(path + ":" + std::to_string(line_no) + ": not a number: '" +
                          std::string(s) + "'");
    return v;
}

// Calls fn(line_no, fields) for every non-empty line not starting with '#'.
// Line numbers are 1-based over the raw file.
template <typename Fn>
void for_each_tsv_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open: " + path);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        fields.clear();
        std::string_view rest = line;
        while (true) {
            auto tab = rest.find('\t');
            if (tab == std::string_view::npos) {
                fields.push_back(rest);
                break;
            }
            fields.push_back(rest.substr(0, tab));
            rest.remove_prefix(tab + 1);
        }
        fn(line_no, std::span<const std::string_view>(fields));
    }
}

}  // namespace ssp
