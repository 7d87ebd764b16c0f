// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "commands.hpp"

#include "manifest.hpp"

#include "radresp/csv.hpp"
#include "radresp/error.hpp"
#include "radresp/ingest.hpp"
#include "radresp/pipeline.hpp"
#include "radresp/simulator.hpp"
#include "radresp/udp.hpp"
#include "radresp/wav.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace radresp::cli {

namespace fs = std::filesystem;
using io::format_number;

namespace {

std::string abs_path(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error(ErrorCode::IoFailure, "cannot create output directory " + dir.string());
    }
}

void require_file(const std::string& path)
{
    if (!fs::is_regular_file(path)) {
        throw Error(ErrorCode::IoFailure, "no such file: " + path);
    }
}

nlohmann::json read_json_file(const std::string& path, ErrorCode on_parse_error)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(on_parse_error, path + ": " + e.what());
    }
}

// Flags shared by every command that runs an STFT.
struct SpectralFlags {
    double window_s = spectral::StftParams{}.window_s;
    double overlap_s = spectral::StftParams{}.overlap_s;
    std::string window_shape = "blackman";
    std::size_t pad_factor = 1;
    double band_low = spectral::Band{}.low_bpm;
    double band_high = spectral::Band{}.high_bpm;
    std::size_t spectrogram_stride = 20;

    void attach(CLI::App* app)
    {
        app->add_option("--window-s", window_s, "STFT window length in seconds")->capture_default_str();
        app->add_option("--overlap-s", overlap_s, "STFT window overlap in seconds")->capture_default_str();
        app->add_option("--window-shape", window_shape, "blackman, hann or rectangular")->capture_default_str();
        app->add_option("--pad-factor", pad_factor, "zero-padding factor (display only)")->capture_default_str();
        app->add_option("--band-low", band_low, "lowest admissible rate in bpm")->capture_default_str();
        app->add_option("--band-high", band_high, "highest admissible rate in bpm")->capture_default_str();
        app->add_option("--spectrogram-stride", spectrogram_stride, "write every n-th STFT frame")
            ->capture_default_str();
    }

    spectral::StftParams params(double sample_rate_hz) const
    {
        spectral::StftParams p;
        p.window_s = window_s;
        p.overlap_s = overlap_s;
        p.window_shape = spectral::window_shape_from_string(window_shape);
        p.sample_rate_hz = sample_rate_hz;
        p.pad_factor = pad_factor;
        spectral::validate(p);
        return p;
    }

    spectral::Band band() const
    {
        if (!(band_low >= 0.0) || !(band_high > band_low)) {
            throw Error(ErrorCode::InvalidParams, "band must satisfy 0 <= low < high");
        }
        return {band_low, band_high};
    }

    void append(std::vector<std::string>& argv) const
    {
        argv.insert(argv.end(), {"--window-s", format_number(window_s), "--overlap-s", format_number(overlap_s),
                                 "--window-shape", window_shape, "--pad-factor", std::to_string(pad_factor),
                                 "--band-low", format_number(band_low), "--band-high", format_number(band_high),
                                 "--spectrogram-stride", std::to_string(spectrogram_stride)});
    }
};

struct SimulateFlags {
    std::string scene;
    std::string config;
    double duration_s = 0.0;
    std::string out;
    std::uint64_t seed = 0;
};

struct ProcessRadarFlags {
    std::string capture;
    std::string out;
    SpectralFlags spectral;
    std::string variant = "A";
    double min_range_m = RadarOptions{}.min_range_m;
    double max_range_m = RadarOptions{}.max_range_m;
    std::string clutter = "arc";
    bool no_detrend = false;
    bool range_map = false;
};

struct ProcessAudioFlags {
    std::string wav;
    std::string out;
    SpectralFlags spectral;
    std::string decimator = "fir";
    std::string rectifier = "abs";
};

struct CompareFlags {
    std::string a;
    std::string b;
    std::string out;
};

struct SynthAudioFlags {
    std::string spec;
    double duration_s = 0.0;
    std::string out;
    double rate_bpm = 0.0;
    bool both_sounds = false;
    std::string noise_db;
    double burst_s = 0.0;
    double burst_amplitude = 0.0;
    double inhale_level = 0.0;
    std::uint64_t seed = 0;
};

struct ListenFlags {
    std::uint16_t port = ingest::kDefaultUdpPort;
    std::string bind = "0.0.0.0";
    std::string config;
    std::uint64_t max_datagrams = 0;
    int idle_timeout_ms = 2000;
    std::string out;
};

struct ReplayFlags {
    std::string capture;
    std::string host = "127.0.0.1";
    std::uint16_t port = ingest::kDefaultUdpPort;
    int gap_us = 0;
};

struct RunFlags {
    std::string manifest;
    std::string out;
};

RadarConfig load_radar_config(const std::string& path)
{
    if (path.empty()) {
        return {};
    }
    return sim::radar_config_from_json(read_json_file(path, ErrorCode::InvalidConfig));
}

int cmd_simulate(CLI::App& app, const SimulateFlags& f, std::ostream& out)
{
    auto scene = f.scene.empty() ? sim::default_scene() : sim::load_scene(f.scene);
    if (app.count("--seed") > 0) {
        scene.seed = f.seed;
    }
    const auto config = load_radar_config(f.config);
    const auto cube = sim::synth_cube(scene, config, f.duration_s);

    const fs::path dir = abs_path(f.out);
    ensure_dir(dir);
    sim::write_capture(cube, dir / "capture.rvsc");
    io::write_truth_csv(scene, cube.frame_timestamps, dir / "truth.csv");

    RunManifest m;
    m.command = "simulate";
    m.argv = {"simulate"};
    if (!f.scene.empty()) {
        m.inputs.push_back(abs_path(f.scene));
        m.argv.insert(m.argv.end(), {"--scene", abs_path(f.scene)});
    }
    if (!f.config.empty()) {
        m.inputs.push_back(abs_path(f.config));
        m.argv.insert(m.argv.end(), {"--config", abs_path(f.config)});
    }
    m.argv.insert(m.argv.end(), {"--duration", format_number(f.duration_s), "--seed", std::to_string(scene.seed),
                                 "--out", dir.string()});
    m.radar_config = config;
    m.seed = scene.seed;
    m.output_dir = dir;
    write_manifest(m);
    out << "wrote " << cube.frames << " frames to " << (dir / "capture.rvsc").string() << '\n';
    return kExitOk;
}

int cmd_process_radar(const ProcessRadarFlags& f, std::ostream& out)
{
    require_file(f.capture);
    const auto cube = ingest::load_capture(f.capture);

    RadarOptions opts;
    opts.min_range_m = f.min_range_m;
    opts.max_range_m = f.max_range_m;
    opts.variant = variant_from_string(f.variant);
    opts.clutter = clutter_method_from_string(f.clutter);
    opts.detrend_phase = !f.no_detrend;
    opts.stft = f.spectral.params(cube.config.frame_rate_hz);
    opts.band = f.spectral.band();
    const auto result = process_radar(cube, opts);

    const fs::path dir = abs_path(f.out);
    ensure_dir(dir);
    io::write_rates_csv(result.rates, dir / "rates.csv");
    io::write_spectrogram_csv(result.spectrogram, dir / "spectrogram.csv", f.spectral.spectrogram_stride);
    if (result.phase) {
        io::write_phase_csv(*result.phase, result.map.frame_times_s, dir / "phase.csv");
    }
    if (f.range_map) {
        io::write_range_map_csv(result.map, dir / "range_map.csv");
    }

    RunManifest m;
    m.command = "process-radar";
    m.inputs = {abs_path(f.capture)};
    m.radar_config = cube.config;
    m.stft = opts.stft;
    m.band = opts.band;
    m.variant = std::string(to_string(opts.variant));
    m.output_dir = dir;
    m.argv = {"process-radar", "--capture", abs_path(f.capture), "--out", dir.string()};
    f.spectral.append(m.argv);
    m.argv.insert(m.argv.end(), {"--variant", *m.variant, "--min-range-m", format_number(f.min_range_m),
                                 "--max-range-m", format_number(f.max_range_m), "--clutter", f.clutter});
    if (f.no_detrend) {
        m.argv.emplace_back("--no-detrend");
    }
    if (f.range_map) {
        m.argv.emplace_back("--range-map");
    }
    write_manifest(m);
    out << "target bin " << result.target_bin << " (" << format_number(result.map.bin_range_m(result.target_bin))
        << " m), " << result.rates.rates_bpm.size() << " rate instants\n";
    return kExitOk;
}

int cmd_process_audio(const ProcessAudioFlags& f, std::ostream& out)
{
    require_file(f.wav);
    const auto trace = audio::read_wav(f.wav);

    AudioOptions opts;
    if (f.decimator == "fir") {
        opts.decimator = audio::Decimator::AntiAliasFir;
    } else if (f.decimator == "multistage") {
        opts.decimator = audio::Decimator::Multistage;
    } else {
        throw Error(ErrorCode::InvalidArgument, "decimator must be fir or multistage");
    }
    if (f.rectifier == "abs") {
        opts.rectifier = audio::Rectifier::Abs;
    } else if (f.rectifier == "square") {
        opts.rectifier = audio::Rectifier::Square;
    } else {
        throw Error(ErrorCode::InvalidArgument, "rectifier must be abs or square");
    }
    opts.stft = f.spectral.params(audio::kFrameRateHz);
    opts.band = f.spectral.band();
    const auto result = process_audio(trace, opts);

    const fs::path dir = abs_path(f.out);
    ensure_dir(dir);
    io::write_rates_csv(result.rates, dir / "rates.csv");
    io::write_envelope_csv(result.envelope, dir / "envelope.csv");
    io::write_spectrogram_csv(result.spectrogram, dir / "spectrogram.csv", f.spectral.spectrogram_stride);

    RunManifest m;
    m.command = "process-audio";
    m.inputs = {abs_path(f.wav)};
    m.stft = opts.stft;
    m.band = opts.band;
    m.output_dir = dir;
    m.argv = {"process-audio", "--wav", abs_path(f.wav), "--out", dir.string()};
    f.spectral.append(m.argv);
    m.argv.insert(m.argv.end(), {"--decimator", f.decimator, "--rectifier", f.rectifier});
    write_manifest(m);
    out << result.envelope.samples.size() << " envelope samples, " << result.rates.rates_bpm.size()
        << " rate instants\n";
    return kExitOk;
}

int cmd_compare(const CompareFlags& f, std::ostream& out)
{
    require_file(f.a);
    require_file(f.b);
    const auto a = io::read_rates_csv(f.a);
    const auto b = io::read_rates_csv(f.b);
    const auto cmp = spectral::compare_rates(a, b);
    const auto line = io::comparison_json(cmp, spectral::rate_stddev(a), spectral::rate_stddev(b));
    out << line << '\n';
    if (!f.out.empty()) {
        const fs::path dir = abs_path(f.out);
        ensure_dir(dir);
        std::ofstream file(dir / "comparison.json", std::ios::trunc);
        file << line << '\n';
        if (!file) {
            throw Error(ErrorCode::IoFailure, "cannot write comparison.json");
        }
        RunManifest m;
        m.command = "compare";
        m.inputs = {abs_path(f.a), abs_path(f.b)};
        m.output_dir = dir;
        m.argv = {"compare", "--a", abs_path(f.a), "--b", abs_path(f.b), "--out", dir.string()};
        write_manifest(m);
    }
    return kExitOk;
}

int cmd_synth_audio(CLI::App& app, const SynthAudioFlags& f, std::ostream& out)
{
    sim::BreathAudioSpec spec;
    if (!f.spec.empty()) {
        spec = sim::breath_audio_from_json(read_json_file(f.spec, ErrorCode::InvalidScene));
    }
    if (app.count("--rate-bpm") > 0) spec.resp_rate_bpm = f.rate_bpm;
    if (app.count("--both-sounds") > 0) spec.exhale_only = !f.both_sounds;
    if (app.count("--burst-s") > 0) spec.burst_duration_s = f.burst_s;
    if (app.count("--burst-amplitude") > 0) spec.burst_amplitude = f.burst_amplitude;
    if (app.count("--inhale-level") > 0) spec.inhale_level = f.inhale_level;
    if (app.count("--seed") > 0) spec.seed = f.seed;
    if (app.count("--noise-db") > 0) {
        if (f.noise_db == "none") {
            spec.noise_db.reset();
        } else {
            try {
                std::size_t used = 0;
                spec.noise_db = std::stod(f.noise_db, &used);
                if (used != f.noise_db.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidArgument, "--noise-db must be a number or 'none'");
            }
        }
    }
    sim::validate(spec);
    const auto trace = sim::synth_audio(spec, f.duration_s);

    const fs::path dir = abs_path(f.out);
    ensure_dir(dir);
    audio::write_wav(trace, dir / "breath.wav");

    RunManifest m;
    m.command = "synth-audio";
    m.seed = spec.seed;
    m.output_dir = dir;
    m.argv = {"synth-audio", "--duration", format_number(f.duration_s), "--out", dir.string(), "--rate-bpm",
              format_number(spec.resp_rate_bpm), "--both-sounds", spec.exhale_only ? "false" : "true",
              "--noise-db", spec.noise_db ? format_number(*spec.noise_db) : "none", "--burst-s",
              format_number(spec.burst_duration_s), "--burst-amplitude", format_number(spec.burst_amplitude),
              "--inhale-level", format_number(spec.inhale_level), "--seed", std::to_string(spec.seed)};
    write_manifest(m);
    out << "wrote " << trace.samples.size() << " samples to " << (dir / "breath.wav").string() << '\n';
    return kExitOk;
}

int cmd_listen(const ListenFlags& f, std::ostream& out)
{
    const auto config = load_radar_config(f.config);
    ingest::UdpListener listener(f.port, f.bind);
    out << "listening on " << f.bind << ":" << listener.port() << '\n' << std::flush;
    const auto session =
        listen_session(listener, f.max_datagrams, std::chrono::milliseconds(f.idle_timeout_ms));
    const auto& rep = session.reassembled.report;
    const auto cube = ingest::decode_cube(session.reassembled.stream, config);

    const fs::path dir = abs_path(f.out);
    ensure_dir(dir);
    ingest::save_capture(cube, dir / "capture.rvsc");
    nlohmann::ordered_json loss;
    loss["expected_datagrams"] = rep.expected_datagrams;
    loss["received"] = rep.received;
    loss["zero_filled_bytes"] = rep.zero_filled_bytes;
    loss["duplicates_dropped"] = rep.duplicates_dropped;
    loss["malformed"] = session.malformed;
    loss["gaps"] = nlohmann::ordered_json::array();
    for (const auto& g : rep.gaps) {
        loss["gaps"].push_back(nlohmann::ordered_json{{"first_missing_seq", g.first_missing_seq}, {"length", g.length}});
    }
    std::ofstream lf(dir / "loss.json", std::ios::trunc);
    lf << loss.dump(2) << '\n';
    if (!lf) {
        throw Error(ErrorCode::IoFailure, "cannot write loss.json");
    }

    RunManifest m;
    m.command = "listen";
    m.radar_config = config;
    m.output_dir = dir;
    m.argv = {"listen", "--port", std::to_string(f.port), "--bind", f.bind, "--max-datagrams",
              std::to_string(f.max_datagrams), "--idle-timeout-ms", std::to_string(f.idle_timeout_ms), "--out",
              dir.string()};
    if (!f.config.empty()) {
        m.inputs.push_back(abs_path(f.config));
        m.argv.insert(m.argv.end(), {"--config", abs_path(f.config)});
    }
    write_manifest(m);
    out << rep.received << "/" << rep.expected_datagrams << " datagrams, " << rep.gaps.size() << " gaps, "
        << cube.frames << " frames\n";
    return kExitOk;
}

int cmd_replay(const ReplayFlags& f, std::ostream& out)
{
    require_file(f.capture);
    const auto cube = ingest::load_capture(f.capture);
    const auto datagrams = sim::datagram_stream(cube);
    ingest::send_datagrams(datagrams, f.host, f.port, std::chrono::microseconds(f.gap_us));
    out << "sent " << datagrams.size() << " datagrams to " << f.host << ":" << f.port << '\n';
    return kExitOk;
}

int report(const Error& e, std::ostream& err)
{
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInputError : kExitProcessingError;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth);

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err, int depth)
{
    if (depth > 0) {
        throw Error(ErrorCode::InvalidArgument, "a manifest cannot invoke 'run'");
    }
    const auto m = read_manifest(f.manifest);
    auto argv = m.argv;
    if (!f.out.empty()) {
        const auto it = std::find(argv.begin(), argv.end(), "--out");
        if (it == argv.end() || std::next(it) == argv.end()) {
            throw Error(ErrorCode::InvalidArgument, "manifest command has no --out to override");
        }
        *std::next(it) = abs_path(f.out);
    }
    return dispatch(argv, out, err, depth + 1);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int depth)
{
    CLI::App app{"Respiration-rate estimation from FMCW radar and breath audio"};
    app.name("radresp");
    app.require_subcommand(1);

    SimulateFlags sim_f;
    auto* sim_cmd = app.add_subcommand("simulate", "synthesise a radar capture and its ground truth");
    sim_cmd->add_option("--scene", sim_f.scene, "scene JSON (default: built-in single-target scene)");
    sim_cmd->add_option("--config", sim_f.config, "radar configuration JSON");
    sim_cmd->add_option("--duration", sim_f.duration_s, "duration in seconds")->required();
    sim_cmd->add_option("--out", sim_f.out, "output directory")->required();
    sim_cmd->add_option("--seed", sim_f.seed, "override the scene seed");

    ProcessRadarFlags pr_f;
    auto* pr_cmd = app.add_subcommand("process-radar", "estimate respiration rate from a capture");
    pr_cmd->add_option("--capture", pr_f.capture, "capture file")->required();
    pr_cmd->add_option("--out", pr_f.out, "output directory")->required();
    pr_f.spectral.attach(pr_cmd);
    pr_cmd->add_option("--variant", pr_f.variant, "A (phase) or B (complex series)")->capture_default_str();
    pr_cmd->add_option("--min-range-m", pr_f.min_range_m, "target search window start")->capture_default_str();
    pr_cmd->add_option("--max-range-m", pr_f.max_range_m, "target search window end")->capture_default_str();
    pr_cmd->add_option("--clutter", pr_f.clutter, "static component estimator: arc, mean or none")
        ->capture_default_str();
    pr_cmd->add_flag("--no-detrend", pr_f.no_detrend, "keep the linear trend of the unwrapped phase");
    pr_cmd->add_flag("--range-map", pr_f.range_map, "also write range_map.csv");

    ProcessAudioFlags pa_f;
    auto* pa_cmd = app.add_subcommand("process-audio", "estimate respiration rate from a breath WAV");
    pa_cmd->add_option("--wav", pa_f.wav, "16-bit mono 44.1 kHz WAV")->required();
    pa_cmd->add_option("--out", pa_f.out, "output directory")->required();
    pa_f.spectral.attach(pa_cmd);
    pa_cmd->add_option("--decimator", pa_f.decimator, "fir or multistage")->capture_default_str();
    pa_cmd->add_option("--rectifier", pa_f.rectifier, "abs or square")->capture_default_str();

    CompareFlags cmp_f;
    auto* cmp_cmd = app.add_subcommand("compare", "compare two rate CSVs, print one JSON line");
    cmp_cmd->add_option("--a", cmp_f.a, "reference rates CSV")->required();
    cmp_cmd->add_option("--b", cmp_f.b, "rates CSV under test")->required();
    cmp_cmd->add_option("--out", cmp_f.out, "also write comparison.json and a manifest here");

    SynthAudioFlags sa_f;
    auto* sa_cmd = app.add_subcommand("synth-audio", "synthesise breath audio as a WAV");
    sa_cmd->add_option("--spec", sa_f.spec, "breath audio JSON; flags override its fields");
    sa_cmd->add_option("--duration", sa_f.duration_s, "duration in seconds")->required();
    sa_cmd->add_option("--out", sa_f.out, "output directory")->required();
    sa_cmd->add_option("--rate-bpm", sa_f.rate_bpm, "respiration rate");
    sa_cmd->add_option("--both-sounds", sa_f.both_sounds, "true: inhalation bursts too");
    sa_cmd->add_option("--noise-db", sa_f.noise_db, "background noise dB re full scale, or 'none'");
    sa_cmd->add_option("--burst-s", sa_f.burst_s, "burst duration in seconds");
    sa_cmd->add_option("--burst-amplitude", sa_f.burst_amplitude, "burst RMS at peak, full scale 1");
    sa_cmd->add_option("--inhale-level", sa_f.inhale_level, "inhalation level relative to exhalation");
    sa_cmd->add_option("--seed", sa_f.seed, "noise seed");

    ListenFlags li_f;
    auto* li_cmd = app.add_subcommand("listen", "record a UDP raw-data stream into a capture");
    li_cmd->add_option("--port", li_f.port, "UDP port")->capture_default_str();
    li_cmd->add_option("--bind", li_f.bind, "bind address")->capture_default_str();
    li_cmd->add_option("--config", li_f.config, "radar configuration JSON");
    li_cmd->add_option("--max-datagrams", li_f.max_datagrams, "stop after this many (0: until idle)")
        ->capture_default_str();
    li_cmd->add_option("--idle-timeout-ms", li_f.idle_timeout_ms, "stop after this much silence")
        ->capture_default_str();
    li_cmd->add_option("--out", li_f.out, "output directory")->required();

    ReplayFlags rp_f;
    auto* rp_cmd = app.add_subcommand("replay", "send a capture as UDP datagrams");
    rp_cmd->add_option("--capture", rp_f.capture, "capture file")->required();
    rp_cmd->add_option("--host", rp_f.host, "destination host")->capture_default_str();
    rp_cmd->add_option("--port", rp_f.port, "destination port")->capture_default_str();
    rp_cmd->add_option("--gap-us", rp_f.gap_us, "pause between datagrams")->capture_default_str();

    RunFlags run_f;
    auto* run_cmd = app.add_subcommand("run", "re-run a recorded manifest");
    run_cmd->add_option("--manifest", run_f.manifest, "manifest.json")->required();
    run_cmd->add_option("--out", run_f.out, "write outputs here instead of the recorded directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*sim_cmd) return cmd_simulate(*sim_cmd, sim_f, out);
        if (*pr_cmd) return cmd_process_radar(pr_f, out);
        if (*pa_cmd) return cmd_process_audio(pa_f, out);
        if (*cmp_cmd) return cmd_compare(cmp_f, out);
        if (*sa_cmd) return cmd_synth_audio(*sa_cmd, sa_f, out);
        if (*li_cmd) return cmd_listen(li_f, out);
        if (*rp_cmd) return cmd_replay(rp_f, out);
        if (*run_cmd) return cmd_run(run_f, out, err, depth);
    } catch (const Error& e) {
        return report(e, err);
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitProcessingError;
    }
    return kExitInputError;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    return dispatch(args, out, err, 0);
}

} // namespace radresp::cli
