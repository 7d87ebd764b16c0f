// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/csv.hpp"

#include "radresp/error.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace radresp::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
    }
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line)
{
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorCode::UnsupportedFormat,
                    path.string() + ":" + std::to_string(line) + ": not a number '" + s + "'");
    }
    return v;
}

} // namespace

std::string format_number(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_range_map_csv(const radar::RangeTimeMap& map, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "frame_time_s";
    for (std::size_t k = 0; k < map.bins; ++k) {
        out << ",r" << format_number(map.bin_range_m(k));
    }
    out << '\n';
    for (std::size_t f = 0; f < map.frames; ++f) {
        out << format_number(map.frame_times_s[f]);
        for (std::size_t k = 0; k < map.bins; ++k) {
            const double p = std::norm(map.at(f, k));
            out << ',' << format_number(p > 0.0 ? 10.0 * std::log10(p) : -300.0);
        }
        out << '\n';
    }
    finish(out, path);
}

void write_phase_csv(const radar::PhaseTrace& trace, std::span<const double> frame_times_s,
                     const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "frame_time_s,phase_rad\n";
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const double t = i < frame_times_s.size() ? frame_times_s[i] : static_cast<double>(i) / trace.rate_hz;
        out << format_number(t) << ',' << format_number(trace.samples[i]) << '\n';
    }
    finish(out, path);
}

void write_envelope_csv(const audio::EnvelopeTrace& envelope, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "time_s,envelope\n";
    for (std::size_t i = 0; i < envelope.samples.size(); ++i) {
        out << format_number(static_cast<double>(i) / envelope.rate_hz) << ','
            << format_number(envelope.samples[i]) << '\n';
    }
    finish(out, path);
}

void write_spectrogram_csv(const spectral::Spectrogram& spec, const std::filesystem::path& path,
                           std::size_t stride)
{
    if (stride == 0) {
        throw Error(ErrorCode::InvalidArgument, "spectrogram stride must be positive");
    }
    auto out = open_out(path);
    out << "time_s";
    for (double f : spec.freq_axis_bpm) {
        out << ",bpm" << format_number(f);
    }
    out << '\n';
    for (std::size_t t = 0; t < spec.frames; t += stride) {
        out << format_number(spec.time_axis_s[t]);
        for (std::size_t b = 0; b < spec.bins; ++b) {
            out << ',' << format_number(spec.at(t, b));
        }
        out << '\n';
    }
    finish(out, path);
}

void write_rates_csv(const spectral::RateSeries& rates, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "time_s,rate_bpm,magnitude\n";
    for (std::size_t i = 0; i < rates.times_s.size(); ++i) {
        out << format_number(rates.times_s[i]) << ',' << format_number(rates.rates_bpm[i]) << ','
            << format_number(rates.magnitudes[i]) << '\n';
    }
    finish(out, path);
}

spectral::RateSeries read_rates_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("time_s,rate_bpm", 0) != 0) {
        throw Error(ErrorCode::UnsupportedFormat, path.string() + ": expected header 'time_s,rate_bpm,magnitude'");
    }
    spectral::RateSeries rates;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
            throw Error(ErrorCode::UnsupportedFormat, path.string() + ":" + std::to_string(lineno) + ": too few columns");
        }
        std::getline(ss, c, ',');
        rates.times_s.push_back(parse_double(a, path, lineno));
        rates.rates_bpm.push_back(parse_double(b, path, lineno));
        rates.magnitudes.push_back(c.empty() ? 0.0 : parse_double(c, path, lineno));
        if (rates.times_s.size() > 1 && !(rates.times_s.back() > rates.times_s[rates.times_s.size() - 2])) {
            throw Error(ErrorCode::UnsupportedFormat, path.string() + ": times must be strictly increasing");
        }
    }
    return rates;
}

void write_truth_csv(const sim::SceneSpec& scene, std::span<const double> frame_times_s,
                     const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "time_s,displacement_m,rate_bpm\n";
    for (double t : frame_times_s) {
        double d = 0.0;
        double r = 0.0;
        if (!scene.targets.empty()) {
            d = sim::chest_displacement(scene.targets.front().motion, t);
            r = sim::respiration_rate_bpm(scene.targets.front().motion, t);
        }
        out << format_number(t) << ',' << format_number(d) << ',' << format_number(r) << '\n';
    }
    finish(out, path);
}

std::string comparison_json(const spectral::RateComparison& cmp, double std_a_bpm, double std_b_bpm)
{
    nlohmann::ordered_json doc;
    doc["mae_bpm"] = cmp.mae_bpm;
    doc["rmse_bpm"] = cmp.rmse_bpm;
    doc["within_2bpm_fraction"] = cmp.within_2bpm_fraction;
    doc["n_instants"] = cmp.n_instants;
    doc["std_a_bpm"] = std_a_bpm;
    doc["std_b_bpm"] = std_b_bpm;
    return doc.dump();
}

} // namespace radresp::io
