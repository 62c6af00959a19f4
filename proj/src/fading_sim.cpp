// SPDX-License-Identifier: Apache-2.0
//
// imistat: second-order statistics of the instantaneous mutual information
// of time-varying Rayleigh fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "imistat/fading_sim.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>
#include <new>
#include <random>

#include "imistat/error.hpp"
#include "imistat/kernels.hpp"

namespace imistat {

namespace {

// FFTW's planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

class BackwardPlan {
public:
    BackwardPlan(std::size_t n, fftw_complex* buf) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (plan_ == nullptr) throw ResourceError("fading_sim: FFTW could not create a plan");
    }
    ~BackwardPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    BackwardPlan(const BackwardPlan&) = delete;
    BackwardPlan& operator=(const BackwardPlan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

std::size_t fft_length_for(const SimConfig& cfg) {
    const auto over = static_cast<std::size_t>(cfg.oversample);
    if (cfg.num_samples > max_fft_length / over)
        throw ResourceError("fading_sim: oversample * L exceeds the FFT length limit");
    return cfg.num_samples * over;
}

void check_nyquist(const DopplerGrid& grid) {
    grid.validate();
    if (!(grid.fm_hz * grid.ts_s < 0.5))
        throw ConfigError("fading_sim: fm * Ts must be < 0.5 (got " + std::to_string(grid.fm_hz * grid.ts_s) + ")");
}

template <class T>
void put_le(std::ostream& os, T v) {
    auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
    os.write(reinterpret_cast<const char*>(bits.data()), sizeof(T));
}

template <class T>
T get_le(const unsigned char* p) {
    std::array<unsigned char, sizeof(T)> bits{};
    std::copy(p, p + sizeof(T), bits.begin());
    if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
    return std::bit_cast<T>(bits);
}

constexpr std::array<char, 4> magic = {'F', 'A', 'D', 'T'};
constexpr std::size_t header_bytes = 32;

}  // namespace

void SimConfig::validate() const {
    if (num_samples < 2) throw ConfigError("sim: num_samples must be >= 2");
    if (oversample < 1) throw ConfigError("sim: oversample must be >= 1");
}

SpectralShaper::SpectralShaper(const ScatteringScenario& s, const DopplerGrid& grid, std::size_t fft_length)
    : n_(fft_length), ts_s_(grid.ts_s), fm_hz_(grid.fm_hz) {
    check_nyquist(grid);
    if (n_ < 2) throw ConfigError("fading_sim: FFT length must be >= 2");
    const double df = 1.0 / (static_cast<double>(n_) * ts_s_);
    const auto reach = static_cast<long long>(std::ceil(fm_hz_ / df + 0.5));
    const auto half = static_cast<long long>(n_ / 2);

    std::vector<long long> signed_bins;
    for (long long j = -std::min(reach, half - 1 + static_cast<long long>(n_ % 2)); j <= std::min(reach, half); ++j)
        signed_bins.push_back(j);

    const auto mass = kernels::omp::spectral_bin_masses(s, fm_hz_, df, signed_bins);
    for (std::size_t i = 0; i < signed_bins.size(); ++i) {
        if (mass[i] <= 0.0) continue;
        const long long j = signed_bins[i];
        bins_.push_back(static_cast<std::size_t>(j < 0 ? j + static_cast<long long>(n_) : j));
        amp_.push_back(std::sqrt(mass[i]));
    }
    if (bins_.empty()) throw ConfigError("fading_sim: Doppler spectrum occupies no FFT bin");
}

FadingTrace SpectralShaper::synthesize(std::size_t num_samples, std::uint64_t seed, std::uint64_t subchannel,
                                       std::uint64_t realization) const {
    if (num_samples < 2 || num_samples > n_) throw ConfigError("fading_sim: need 2 <= L <= FFT length");

    std::unique_ptr<fftw_complex[], FftwFree> buf(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_)));
    if (!buf) throw ResourceError("fading_sim: cannot allocate " + std::to_string(n_) + "-point FFT buffer");
    BackwardPlan plan(n_, buf.get());
    for (std::size_t k = 0; k < n_; ++k) buf[k][0] = buf[k][1] = 0.0;

    std::seed_seq seq{lo32(seed), hi32(seed), lo32(subchannel), hi32(subchannel), lo32(realization),
                      hi32(realization)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        buf[bins_[i]][0] = amp_[i] * re;
        buf[bins_[i]][1] = amp_[i] * im;
    }
    plan.execute();

    FadingTrace out;
    out.ts_s = ts_s_;
    out.fm_hz = fm_hz_;
    out.samples.resize(num_samples);
    double power = 0.0;
    for (std::size_t l = 0; l < num_samples; ++l) {
        out.samples[l] = {buf[l][0], buf[l][1]};
        power += std::norm(out.samples[l]);
    }
    power /= static_cast<double>(num_samples);
    if (!(power > 0.0)) throw AccuracyError("fading_sim: synthesized trace has zero power", 0.0, 0);
    const double scale = 1.0 / std::sqrt(power);
    for (auto& h : out.samples) h *= scale;
    return out;
}

FadingTrace generate_trace(const ScatteringScenario& s, const DopplerGrid& grid, const SimConfig& cfg,
                           std::uint64_t subchannel, std::uint64_t realization) {
    cfg.validate();
    check_nyquist(grid);
    try {
        const SpectralShaper shaper(s, grid, fft_length_for(cfg));
        return shaper.synthesize(cfg.num_samples, cfg.seed, subchannel, realization);
    } catch (const std::bad_alloc&) {
        throw ResourceError("fading_sim: out of memory for L = " + std::to_string(cfg.num_samples));
    }
}

std::vector<FadingTrace> generate_mimo_traces(const ScatteringScenario& s, const DopplerGrid& grid,
                                              const SimConfig& cfg, const AntennaConfig& antennas,
                                              std::uint64_t realization) {
    cfg.validate();
    check_nyquist(grid);
    const auto count = static_cast<std::size_t>(antennas.product());
    std::vector<FadingTrace> traces(count);
    try {
        const SpectralShaper shaper(s, grid, fft_length_for(cfg));
        for (std::size_t sub = 0; sub < count; ++sub)
            traces[sub] = shaper.synthesize(cfg.num_samples, cfg.seed, sub, realization);
    } catch (const std::bad_alloc&) {
        throw ResourceError("fading_sim: out of memory for L = " + std::to_string(cfg.num_samples));
    }
    return traces;
}

void write_trace(const std::string& path, const FadingTrace& trace) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + path + " for writing");
    os.write(magic.data(), magic.size());
    put_le<std::uint32_t>(os, trace_format_version);
    put_le<std::uint64_t>(os, trace.samples.size());
    put_le<double>(os, trace.ts_s);
    put_le<double>(os, trace.fm_hz);
    for (const auto& h : trace.samples) {
        put_le<double>(os, h.real());
        put_le<double>(os, h.imag());
    }
    if (!os) throw Error("write failed: " + path);
}

FadingTrace read_trace(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (bytes.size() < header_bytes) throw FormatError(path + ": truncated trace header");
    if (!std::equal(magic.begin(), magic.end(), bytes.begin(), [](char a, unsigned char b) {
            return static_cast<unsigned char>(a) == b;
        }))
        throw FormatError(path + ": bad magic (expected FADT)");
    const auto version = get_le<std::uint32_t>(bytes.data() + 4);
    if (version != trace_format_version)
        throw FormatError(path + ": unsupported trace version " + std::to_string(version));
    const auto len = get_le<std::uint64_t>(bytes.data() + 8);
    FadingTrace t;
    t.ts_s = get_le<double>(bytes.data() + 16);
    t.fm_hz = get_le<double>(bytes.data() + 24);
    if (!(t.ts_s > 0.0) || !std::isfinite(t.ts_s) || !(t.fm_hz > 0.0) || !std::isfinite(t.fm_hz))
        throw FormatError(path + ": header Ts/fm must be positive and finite");
    if (len > (bytes.size() - header_bytes) / 16 || bytes.size() != header_bytes + 16 * len)
        throw FormatError(path + ": payload size does not match header length " + std::to_string(len));
    t.samples.resize(len);
    for (std::uint64_t l = 0; l < len; ++l) {
        const unsigned char* p = bytes.data() + header_bytes + 16 * l;
        t.samples[l] = {get_le<double>(p), get_le<double>(p + 8)};
        if (!std::isfinite(t.samples[l].real()) || !std::isfinite(t.samples[l].imag()))
            throw FormatError(path + ": non-finite sample at index " + std::to_string(l));
    }
    return t;
}

}  // namespace imistat
