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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "imistat/channel_model.hpp"
#include "imistat/types.hpp"

namespace imistat {

struct SimConfig {
    std::size_t num_samples = 0;  ///< L
    std::uint64_t seed = 0;
    int oversample = 8;           ///< FFT length is oversample * L

    void validate() const;
};

struct FadingTrace {
    std::vector<std::complex<double>> samples;
    double ts_s = 0.0;
    double fm_hz = 0.0;
};

/// Largest FFT length the simulator will allocate.
inline constexpr std::size_t max_fft_length = std::size_t{1} << 28;

/// Square-root bin masses of the Doppler spectrum on an n-point FFT grid with
/// spacing 1/(n Ts), in FFT order. Reusable across subchannels and realizations.
class SpectralShaper {
public:
    SpectralShaper(const ScatteringScenario& s, const DopplerGrid& grid, std::size_t fft_length);

    [[nodiscard]] std::size_t fft_length() const noexcept { return n_; }
    [[nodiscard]] const std::vector<std::size_t>& active_bins() const noexcept { return bins_; }
    [[nodiscard]] const std::vector<double>& amplitudes() const noexcept { return amp_; }

    /// One trace of length L from the substream keyed by (seed, subchannel, realization).
    [[nodiscard]] FadingTrace synthesize(std::size_t num_samples, std::uint64_t seed, std::uint64_t subchannel,
                                         std::uint64_t realization) const;

private:
    std::size_t n_;
    double ts_s_;
    double fm_hz_;
    std::vector<std::size_t> bins_;
    std::vector<double> amp_;
};

FadingTrace generate_trace(const ScatteringScenario& s, const DopplerGrid& grid, const SimConfig& cfg,
                           std::uint64_t subchannel = 0, std::uint64_t realization = 0);

/// M*N traces; subchannel index r*M + t draws from its own substream.
std::vector<FadingTrace> generate_mimo_traces(const ScatteringScenario& s, const DopplerGrid& grid,
                                              const SimConfig& cfg, const AntennaConfig& antennas,
                                              std::uint64_t realization = 0);

/// Trace dump: 32-byte header {"FADT", u32 version, u64 L, f64 Ts, f64 fm},
/// then L little-endian (re, im) float64 pairs.
inline constexpr std::uint32_t trace_format_version = 1;

void write_trace(const std::string& path, const FadingTrace& trace);
FadingTrace read_trace(const std::string& path);

}  // namespace imistat
