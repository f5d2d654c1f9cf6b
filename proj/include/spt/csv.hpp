#pragma once

// CSV ingestion and output. Two accepted headers:
//   time,s1,...,sJ    capitalizations (converted to weights)
//   time,mu1,...,muJ  weights (renormalized within the 1e-9 band)
// Numbers are written in shortest round-trip form.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "spt/errors.hpp"
#include "spt/weight_path.hpp"

namespace spt {

inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view token, std::size_t line_no) {
    double x = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), x);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw DomainError("line " + std::to_string(line_no) + ": bad number '" +
                          std::string(token) + "'");
    return x;
}

namespace detail {

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

inline WeightPath parse_path_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find('\n', start);
        std::string_view line = (pos == std::string_view::npos)
                                    ? text.substr(start)
                                    : text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (lines.size() < 3) throw DomainError("CSV needs a header and at least 2 rows");

    const auto header = detail::split_csv_line(lines[0]);
    if (header.size() < 3 || header[0] != "time")
        throw DomainError("CSV header must be time,s1,...,sJ or time,mu1,...,muJ");
    const std::size_t assets = header.size() - 1;
    bool caps_mode;
    if (header[1].starts_with("s"))
        caps_mode = true;
    else if (header[1].starts_with("mu"))
        caps_mode = false;
    else
        throw DomainError("CSV header must be time,s1,...,sJ or time,mu1,...,muJ");
    const std::string_view prefix = caps_mode ? "s" : "mu";
    for (std::size_t j = 0; j < assets; ++j) {
        const std::string want = std::string(prefix) + std::to_string(j + 1);
        if (header[j + 1] != want)
            throw DomainError("CSV header column " + std::to_string(j + 1) +
                              " must be '" + want + "'");
    }

    std::vector<double> times;
    std::vector<double> values;
    times.reserve(lines.size() - 1);
    values.reserve((lines.size() - 1) * assets);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = detail::split_csv_line(lines[i]);
        if (cells.size() != assets + 1)
            throw DomainError("line " + std::to_string(i + 1) + ": expected " +
                              std::to_string(assets + 1) + " columns");
        times.push_back(parse_double(cells[0], i + 1));
        for (std::size_t j = 0; j < assets; ++j)
            values.push_back(parse_double(cells[j + 1], i + 1));
    }
    if (caps_mode) return weights_from_caps(std::move(times), values, assets);
    return WeightPath(std::move(times), std::move(values), assets);
}

inline WeightPath read_path_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_path_csv(buf.str());
}

inline std::string to_weights_csv(const WeightPath& path) {
    std::string out = "time";
    for (std::size_t j = 1; j <= path.assets(); ++j) out += ",mu" + std::to_string(j);
    out += "\n";
    for (std::size_t k = 0; k < path.size(); ++k) {
        out += format_double(path.time(k));
        for (std::size_t j = 0; j < path.assets(); ++j) {
            out += ",";
            out += format_double(path.weight(k, j));
        }
        out += "\n";
    }
    return out;
}

// Write via a temp file in the same directory, then rename into place.
inline void atomic_write(const std::filesystem::path& file, std::string_view content) {
    namespace fs = std::filesystem;
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, file);
}

inline void write_weights_csv(const std::filesystem::path& file, const WeightPath& path) {
    atomic_write(file, to_weights_csv(path));
}

}  // namespace spt
