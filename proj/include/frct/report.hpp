#pragma once

// MetricsReport and its CSV (`metric,channel,value`) / JSON serializations.
// Non-finite PSNR is written as the string "inf" in both.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "frct/error.hpp"
#include "frct/image.hpp"
#include "frct/metrics.hpp"

namespace frct {

/// Shortest representation that parses back to the same double; +inf is "inf".
inline std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw FormatError("not a number: '" + std::string(s) + "'");
    return v;
}

struct MetricsReport {
    double psnr_db = 0.0;
    double ssim = 0.0;
    std::vector<double> ssim_channels;
    std::vector<double> entropy_bits;  // of the test image, per channel
    std::vector<double> chi_square;    // of the test image, per channel
    std::vector<Histogram> histograms;
    std::optional<double> encrypt_seconds;
    std::optional<double> decrypt_seconds;
};

/// Fidelity of `test` against `ref`, plus histogram statistics of `test`.
inline MetricsReport compute_report(const ImageBuffer& ref, const ImageBuffer& test) {
    MetricsReport r;
    r.psnr_db = psnr(ref, test);
    r.ssim_channels = ssim_per_channel(ref, test);
    double total = 0.0;
    for (double s : r.ssim_channels) total += s;
    r.ssim = total / static_cast<double>(r.ssim_channels.size());
    r.histograms = histogram(test);
    for (const auto& h : r.histograms) {
        r.entropy_bits.push_back(shannon_entropy(h));
        r.chi_square.push_back(histogram_total(h) >= 256 ? chi_square_uniform(h)
                                                         : std::numeric_limits<double>::quiet_NaN());
    }
    return r;
}

struct ReportRow {
    std::string metric;
    std::string channel;  // "all" or a channel index
    double value;
};

inline std::vector<ReportRow> report_rows(const MetricsReport& r) {
    std::vector<ReportRow> rows;
    rows.push_back({"psnr_db", "all", r.psnr_db});
    rows.push_back({"ssim", "all", r.ssim});
    for (std::size_t c = 0; c < r.ssim_channels.size(); ++c)
        rows.push_back({"ssim", std::to_string(c), r.ssim_channels[c]});
    for (std::size_t c = 0; c < r.entropy_bits.size(); ++c)
        rows.push_back({"entropy_bits", std::to_string(c), r.entropy_bits[c]});
    for (std::size_t c = 0; c < r.chi_square.size(); ++c)
        rows.push_back({"chi_square", std::to_string(c), r.chi_square[c]});
    if (r.encrypt_seconds) rows.push_back({"encrypt_seconds", "all", *r.encrypt_seconds});
    if (r.decrypt_seconds) rows.push_back({"decrypt_seconds", "all", *r.decrypt_seconds});
    return rows;
}

inline constexpr std::string_view kReportCsvHeader = "metric,channel,value";

inline std::string report_csv(const MetricsReport& r) {
    std::string out(kReportCsvHeader);
    out += '\n';
    for (const auto& row : report_rows(r))
        out += row.metric + ',' + row.channel + ',' + format_number(row.value) + '\n';
    return out;
}

/// {"metrics": [{"metric": ..., "channel": ..., "value": ...}, ...]}
inline nlohmann::json report_json(const MetricsReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report_rows(r)) {
        nlohmann::json value;
        if (std::isfinite(row.value))
            value = row.value;
        else
            value = format_number(row.value);
        rows.push_back({{"metric", row.metric}, {"channel", row.channel}, {"value", value}});
    }
    return nlohmann::json{{"metrics", rows}};
}

/// One row per bin: `bin,c0[,c1,c2]`.
inline std::string histogram_csv(const std::vector<Histogram>& hists) {
    std::string out = "bin";
    for (std::size_t c = 0; c < hists.size(); ++c) out += ",c" + std::to_string(c);
    out += '\n';
    for (std::size_t bin = 0; bin < 256; ++bin) {
        out += std::to_string(bin);
        for (const auto& h : hists) out += ',' + std::to_string(h[bin]);
        out += '\n';
    }
    return out;
}

}  // namespace frct
