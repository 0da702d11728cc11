#pragma once

// Plot-data and summary serialization.
//
// Curve files are "<theta_degrees> <J>\n" per point: theta printed with the
// shortest round-trip decimal representation, J as a signed integer, single
// space, LF endings, no header. The summary is a JSON document carrying the
// full 36-cell count table per point so that other inequalities can be
// evaluated without rerunning.

#include <cerrno>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ebsim/counts.hpp"
#include "ebsim/simulate.hpp"

namespace ebsim::io {

struct CurvePoint {
    double theta_deg = 0.0;
    std::int64_t j = 0;

    bool operator==(const CurvePoint&) const = default;
};

inline constexpr std::string_view kPairKeys[4] = {"a1b1", "a1b2", "a2b1", "a2b2"};
inline constexpr std::string_view kCellKeys[9] = {"oo", "oe", "ou", "eo", "ee",
                                                  "eu", "uo", "ue", "uu"};

namespace detail {

inline void append_double(std::string& out, double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

inline void append_int(std::string& out, std::int64_t value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

}  // namespace detail

inline std::string format_datafile(const std::vector<CurvePoint>& points) {
    std::string out;
    for (const auto& p : points) {
        detail::append_double(out, p.theta_deg);
        out.push_back(' ');
        detail::append_int(out, p.j);
        out.push_back('\n');
    }
    return out;
}

inline std::vector<CurvePoint> parse_datafile(std::string_view text) {
    std::vector<CurvePoint> points;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            throw std::runtime_error("parse_datafile: missing trailing newline");
        }
        const std::string_view line = text.substr(pos, eol - pos);
        const std::size_t space = line.find(' ');
        if (space == std::string_view::npos) {
            throw std::runtime_error("parse_datafile: malformed line '" + std::string(line) + "'");
        }
        CurvePoint p;
        const auto theta_res =
            std::from_chars(line.data(), line.data() + space, p.theta_deg);
        const auto j_res =
            std::from_chars(line.data() + space + 1, line.data() + line.size(), p.j);
        if (theta_res.ec != std::errc{} || theta_res.ptr != line.data() + space ||
            j_res.ec != std::errc{} || j_res.ptr != line.data() + line.size()) {
            throw std::runtime_error("parse_datafile: malformed line '" + std::string(line) + "'");
        }
        points.push_back(p);
        pos = eol + 1;
    }
    return points;
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::system_error(errno, std::generic_category(),
                                "cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw std::system_error(errno, std::generic_category(),
                                "write to '" + path.string() + "' failed");
    }
}

inline void emit_datafile(const std::vector<CurvePoint>& points,
                          const std::filesystem::path& path) {
    write_file(path, format_datafile(points));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::system_error(errno, std::generic_category(),
                                "cannot open '" + path.string() + "' for reading");
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

// Run configuration as it appears in the summary file.
struct SummaryConfig {
    double theta_start_deg = 0.0;
    double theta_end_deg = 180.0;
    double theta_step_deg = 10.0;
    double threshold = 0.0;
    std::uint64_t trials = 400000;
    std::uint64_t seed = 1;
    std::string mode = "both";
    std::string allocation = "equal";
    std::string output_dir = ".";
    bool emit_oracle = false;
};

inline nlohmann::ordered_json table_to_json(const CountTable& table) {
    nlohmann::ordered_json out;
    for (int p = 0; p < 4; ++p) {
        nlohmann::ordered_json pair;
        pair["trials"] = table.trials[p];
        nlohmann::ordered_json counts;
        for (int c = 0; c < 9; ++c) counts[std::string(kCellKeys[c])] = table.cells[p][c];
        pair["counts"] = std::move(counts);
        out[std::string(kPairKeys[p])] = std::move(pair);
    }
    return out;
}

inline CountTable table_from_json(const nlohmann::json& j) {
    CountTable table;
    for (int p = 0; p < 4; ++p) {
        const auto& pair = j.at(std::string(kPairKeys[p]));
        table.trials[p] = pair.at("trials").get<std::uint64_t>();
        const auto& counts = pair.at("counts");
        for (int c = 0; c < 9; ++c) {
            table.cells[p][c] = counts.at(std::string(kCellKeys[c])).get<std::uint64_t>();
        }
    }
    return table;
}

// theta_degrees carries the exact degree grid as configured; the radian
// values inside SweepResult are not converted back to avoid decimal noise.
inline nlohmann::ordered_json summary_to_json(const SummaryConfig& config,
                                              const std::vector<SweepResult>& results,
                                              const std::vector<double>& theta_degrees) {
    if (theta_degrees.size() != results.size()) {
        throw std::invalid_argument("summary_to_json: theta grid size mismatch");
    }
    nlohmann::ordered_json doc;
    nlohmann::ordered_json cfg;
    cfg["theta_start_deg"] = config.theta_start_deg;
    cfg["theta_end_deg"] = config.theta_end_deg;
    cfg["theta_step_deg"] = config.theta_step_deg;
    cfg["threshold"] = config.threshold;
    cfg["trials"] = config.trials;
    cfg["seed"] = config.seed;
    cfg["mode"] = config.mode;
    cfg["allocation"] = config.allocation;
    cfg["output_dir"] = config.output_dir;
    cfg["emit_oracle"] = config.emit_oracle;
    doc["config"] = std::move(cfg);

    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        nlohmann::ordered_json point;
        point["theta_index"] = i;
        point["theta_deg"] = theta_degrees[i];
        point["j_full"] = r.j_full;
        point["j_deleted"] = r.j_deleted;
        point["empirical_efficiency"] = r.empirical_efficiency;
        point["table"] = table_to_json(r.table);
        points.push_back(std::move(point));
    }
    doc["points"] = std::move(points);
    return doc;
}

struct SummaryPoint {
    double theta_deg = 0.0;
    std::int64_t j_full = 0;
    std::int64_t j_deleted = 0;
    double empirical_efficiency = 0.0;
    CountTable table;
};

inline std::vector<SummaryPoint> summary_points_from_json(const nlohmann::json& doc) {
    std::vector<SummaryPoint> out;
    for (const auto& p : doc.at("points")) {
        SummaryPoint sp;
        sp.theta_deg = p.at("theta_deg").get<double>();
        sp.j_full = p.at("j_full").get<std::int64_t>();
        sp.j_deleted = p.at("j_deleted").get<std::int64_t>();
        sp.empirical_efficiency = p.at("empirical_efficiency").get<double>();
        sp.table = table_from_json(p.at("table"));
        out.push_back(std::move(sp));
    }
    return out;
}

}  // namespace ebsim::io
