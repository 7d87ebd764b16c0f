// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "radresp/simulator.hpp"

#include "radresp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace radresp::sim {

namespace {

std::mt19937_64 substream(std::uint64_t seed, std::uint32_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Breath sound band: 2nd-order band-pass (RBJ, 0 dB peak) centred here.
constexpr double kBreathBandCentreHz = 700.0;
constexpr double kBreathBandQ = 1.0;

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

[[noreturn]] void bad_scene(const std::string& what) { throw Error(ErrorCode::InvalidScene, what); }

// Integral of 2*pi*rate over [0, t], rate in Hz.
double respiration_phase(const MotionSpec& m, double t)
{
    double phase = 0.0;
    double t0 = 0.0;
    double rate = m.resp_rate_bpm;
    for (const auto& step : m.rate_steps) {
        if (step.time_s >= t) {
            break;
        }
        phase += kTwoPi * rate / 60.0 * (step.time_s - t0);
        t0 = step.time_s;
        rate = step.rate_bpm;
    }
    return phase + kTwoPi * rate / 60.0 * (t - t0);
}

struct Scatterer {
    const MotionSpec* motion = nullptr; // null: static
    double range_m = 0.0;
    double amplitude = 0.0;
};

} // namespace

void validate(const MotionSpec& m)
{
    if (!(std::isfinite(m.base_range_m) && m.base_range_m > 0.0)) {
        bad_scene("base_range_m must be positive");
    }
    if (!finite_nonneg(m.resp_amplitude_m) || !finite_nonneg(m.resp_rate_bpm)) {
        bad_scene("respiration rate and amplitude must be non-negative");
    }
    if (!(m.harmonic_2_frac >= 0.0 && m.harmonic_2_frac <= 1.0)) {
        bad_scene("harmonic_2_frac must lie in [0, 1]");
    }
    if (m.heart_rate_bpm.has_value() != m.heart_amplitude_m.has_value()) {
        bad_scene("heart_rate_bpm and heart_amplitude_m must be given together");
    }
    if (m.heart_rate_bpm && (!finite_nonneg(*m.heart_rate_bpm) || !finite_nonneg(*m.heart_amplitude_m))) {
        bad_scene("heart rate and amplitude must be non-negative");
    }
    double last = 0.0;
    for (const auto& s : m.rate_steps) {
        if (!(s.time_s >= last) || !finite_nonneg(s.rate_bpm)) {
            bad_scene("rate_steps must be time-ordered with non-negative rates");
        }
        last = s.time_s;
    }
    const double excursion = m.resp_amplitude_m * (1.0 + m.harmonic_2_frac) + m.heart_amplitude_m.value_or(0.0);
    if (m.base_range_m - excursion <= 0.0 || m.base_range_m + excursion > kChamberExtentM) {
        bad_scene("target motion leaves (0, 6] m");
    }
}

void validate(const SceneSpec& scene)
{
    for (const auto& t : scene.targets) {
        validate(t.motion);
        if (!finite_nonneg(t.reflectivity)) {
            bad_scene("reflectivity must be non-negative");
        }
    }
    for (const auto& r : scene.static_reflectors) {
        if (!(std::isfinite(r.range_m) && r.range_m > 0.0 && r.range_m <= kChamberExtentM)) {
            bad_scene("static reflector range must lie in (0, 6] m");
        }
        if (!finite_nonneg(r.reflectivity)) {
            bad_scene("reflectivity must be non-negative");
        }
    }
    if (scene.snr_db && !std::isfinite(*scene.snr_db)) {
        bad_scene("snr_db must be finite (omit it for a noiseless scene)");
    }
}

void validate(const BreathAudioSpec& spec)
{
    if (!(std::isfinite(spec.resp_rate_bpm) && spec.resp_rate_bpm > 0.0)) {
        bad_scene("resp_rate_bpm must be positive");
    }
    if (!(spec.burst_duration_s > 0.0) || !(spec.burst_duration_s < 60.0 / spec.resp_rate_bpm)) {
        bad_scene("burst_duration_s must be positive and shorter than one breath");
    }
    if (!finite_nonneg(spec.burst_amplitude) || !finite_nonneg(spec.inhale_level)) {
        bad_scene("burst amplitude and inhale level must be non-negative");
    }
    if (spec.noise_db && std::isnan(*spec.noise_db)) {
        bad_scene("noise_db is NaN");
    }
}

double respiration_rate_bpm(const MotionSpec& m, double t)
{
    double rate = m.resp_rate_bpm;
    for (const auto& step : m.rate_steps) {
        if (step.time_s > t) {
            break;
        }
        rate = step.rate_bpm;
    }
    return rate;
}

double chest_displacement(const MotionSpec& m, double t)
{
    const double p = respiration_phase(m, t);
    double d = m.resp_amplitude_m * (std::sin(p) + m.harmonic_2_frac * std::sin(2.0 * p));
    if (m.heart_rate_bpm && m.heart_amplitude_m) {
        d += *m.heart_amplitude_m * std::sin(kTwoPi * *m.heart_rate_bpm / 60.0 * t);
    }
    return d;
}

SceneSpec default_scene()
{
    SceneSpec scene;
    MotionSpec chest;
    chest.base_range_m = 0.5;
    chest.resp_rate_bpm = 15.0;
    chest.resp_amplitude_m = 0.0005;
    scene.targets.push_back({chest, 1.0});
    scene.static_reflectors.push_back({1.49, 0.6});
    scene.static_reflectors.push_back({3.0, 0.4});
    scene.snr_db = 30.0;
    scene.seed = 1;
    return scene;
}

double counts_per_reflectivity(const SceneSpec& scene)
{
    double strongest = 0.0;
    for (const auto& t : scene.targets) {
        strongest = std::max(strongest, t.reflectivity);
    }
    for (const auto& r : scene.static_reflectors) {
        strongest = std::max(strongest, r.reflectivity);
    }
    return strongest > 0.0 ? kStrongestScattererCounts / strongest : 0.0;
}

RadarCube synth_cube(const SceneSpec& scene, const RadarConfig& config, double duration_s)
{
    validate(config);
    validate(scene);
    const double frames_exact = duration_s * config.frame_rate_hz;
    if (!std::isfinite(frames_exact) || frames_exact + 1e-9 < 1.0) {
        throw Error(ErrorCode::DurationTooShort, "duration must cover at least one frame");
    }
    const auto frames = static_cast<std::size_t>(std::floor(frames_exact + 1e-9));
    RadarCube cube(config, frames);

    const double scale = counts_per_reflectivity(scene);
    std::vector<Scatterer> scatterers;
    for (const auto& t : scene.targets) {
        scatterers.push_back({&t.motion, t.motion.base_range_m, t.reflectivity * scale});
    }
    for (const auto& r : scene.static_reflectors) {
        scatterers.push_back({nullptr, r.range_m, r.reflectivity * scale});
    }
    const bool noisy = scene.snr_db.has_value() && scale > 0.0;
    const double noise_sigma =
        noisy ? kStrongestScattererCounts * std::pow(10.0, -*scene.snr_db / 20.0) / std::numbers::sqrt2 : 0.0;

    const std::size_t n = config.samples_per_chirp;
    const double centre = 0.5 * static_cast<double>(n - 1);
    const double lambda = config.wavelength_m();
    for (std::size_t f = 0; f < frames; ++f) {
        auto rng = substream(scene.seed, static_cast<std::uint32_t>(f));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t c = 0; c < config.chirps_per_frame; ++c) {
            const double t = cube.frame_timestamps[f] + static_cast<double>(c) * config.chirp_duration_s();
            for (const auto& s : scatterers) {
                const double range = s.motion ? s.range_m + chest_displacement(*s.motion, t) : s.range_m;
                const double phi = 2.0 * kTwoPi * range / lambda;
                const double step = kTwoPi * config.beat_frequency_hz(range) / config.adc_rate_hz;
                for (std::size_t i = 0; i < n; ++i) {
                    cube.at(f, c, i) += std::polar(s.amplitude, phi + step * (static_cast<double>(i) - centre));
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                auto& z = cube.at(f, c, i);
                if (noisy) {
                    const double re = gauss(rng);
                    const double im = gauss(rng);
                    z += std::complex<double>(re, im) * noise_sigma;
                }
                z = {std::clamp(std::nearbyint(z.real()), -32768.0, 32767.0),
                     std::clamp(std::nearbyint(z.imag()), -32768.0, 32767.0)};
            }
        }
    }
    return cube;
}

audio::AudioTrace synth_audio(const BreathAudioSpec& spec, double duration_s)
{
    validate(spec);
    const double period = 60.0 / spec.resp_rate_bpm;
    if (!std::isfinite(duration_s) || duration_s < period) {
        throw Error(ErrorCode::DurationTooShort, "audio must cover at least one breath period");
    }
    const double fs = audio::kAudioRateHz;
    const auto n = static_cast<std::size_t>(std::llround(duration_s * fs));
    audio::AudioTrace out;
    out.samples.assign(n, 0.0f);
    std::vector<double> x(n, 0.0);

    if (spec.burst_amplitude > 0.0) {
        // Band-limited carrier, normalised to unit RMS.
        auto rng = substream(spec.seed, 1u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double w0 = kTwoPi * kBreathBandCentreHz / fs;
        const double alpha = std::sin(w0) / (2.0 * kBreathBandQ);
        const double a0 = 1.0 + alpha;
        const double b0 = alpha / a0;
        const double b2 = -alpha / a0;
        const double a1 = -2.0 * std::cos(w0) / a0;
        const double a2 = (1.0 - alpha) / a0;
        std::vector<double> carrier(n);
        double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
        double energy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double in = gauss(rng);
            const double y = b0 * in + b2 * x2 - a1 * y1 - a2 * y2;
            x2 = x1;
            x1 = in;
            y2 = y1;
            y1 = y;
            carrier[i] = y;
            energy += y * y;
        }
        const double norm = energy > 0.0 ? 1.0 / std::sqrt(energy / static_cast<double>(n)) : 0.0;

        // Exhalation at 3/4 of each cycle, inhalation at 1/4.
        auto add_burst = [&](double centre_s, double level) {
            const double half = 0.5 * spec.burst_duration_s;
            const auto first = static_cast<std::ptrdiff_t>(std::ceil((centre_s - half) * fs));
            const auto last = static_cast<std::ptrdiff_t>(std::floor((centre_s + half) * fs));
            for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(first, 0);
                 i <= last && i < static_cast<std::ptrdiff_t>(n); ++i) {
                const double u = (static_cast<double>(i) / fs - (centre_s - half)) / spec.burst_duration_s;
                const double shape = std::sin(std::numbers::pi * u);
                x[static_cast<std::size_t>(i)] +=
                    spec.burst_amplitude * level * shape * shape * carrier[static_cast<std::size_t>(i)] * norm;
            }
        };
        for (double cycle = 0.0; cycle < duration_s; cycle += period) {
            add_burst(cycle + 0.75 * period, 1.0);
            if (!spec.exhale_only) {
                add_burst(cycle + 0.25 * period, spec.inhale_level);
            }
        }
    }

    if (spec.noise_db && std::isfinite(*spec.noise_db)) {
        const double sigma = std::pow(10.0, *spec.noise_db / 20.0);
        auto rng = substream(spec.seed, 2u);
        std::normal_distribution<double> gauss(0.0, sigma);
        for (auto& v : x) {
            v += gauss(rng);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.samples[i] = static_cast<float>(std::clamp(x[i], -1.0, 1.0));
    }
    return out;
}

void write_capture(const RadarCube& cube, const std::filesystem::path& path)
{
    ingest::save_capture(cube, path);
}

std::vector<ingest::Datagram> datagram_stream(const RadarCube& cube)
{
    return ingest::chunk_stream(ingest::encode_stream(cube));
}

} // namespace radresp::sim
