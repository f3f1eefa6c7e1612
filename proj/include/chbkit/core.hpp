#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chbkit {

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
    EvenLevels,
    TooFewLevels,
    NonPositive,
    ModulationOutOfRange,
    CellOutOfRange,
    CellCountMismatch,
    SampleRateTooLow,
    CarrierTooSlow,
    NonIntegerPeriod,
    EmptyWaveform,
    NyquistViolation,
    ZeroFundamental,
    EvenHarmonic,
    BoostRequired,
    NotAchievable,
    PfOutOfRange,
    MismatchedSampling,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported as an Error carrying a code the
/// caller can switch on; the message is human-readable context.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Topology and operating point of one cascaded H-bridge phase.
///
/// `v_peak` is the peak of the synthesized phase voltage (N times the cell DC
/// voltage). The cell DC voltage is always derived from it.
struct ChbConfig {
    int levels = 3;
    double v_peak = 1.0;
    double f0 = 60.0;
    double m_a = 1.0;

    static ChbConfig from_cells(int cells, double v_peak, double f0, double m_a = 1.0);

    int cells() const noexcept { return (levels - 1) / 2; }
    double v_dc() const noexcept { return v_peak / cells(); }
};

/// Returns `cfg` unchanged when it is a legal configuration, throws otherwise.
ChbConfig validate_config(const ChbConfig& cfg);

/// Checks only the level count (odd, at least 3).
void validate_levels(int levels);

/// Nearest-level firing angles in radians, sin(angle[i]) = (2i+1)/(L-1).
class SwitchingAngles {
public:
    explicit SwitchingAngles(int levels);

    int levels() const noexcept { return levels_; }
    std::span<const double> angles() const noexcept { return angles_; }
    std::size_t size() const noexcept { return angles_.size(); }
    double operator[](std::size_t i) const { return angles_.at(i); }

private:
    int levels_;
    std::vector<double> angles_;
};

/// One or more whole fundamental periods of a uniformly sampled signal.
class Waveform {
public:
    Waveform(std::vector<double> samples, double sample_rate, double f0);

    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }
    double sample_rate() const noexcept { return sample_rate_; }
    double f0() const noexcept { return f0_; }
    double time_at(std::size_t i) const noexcept { return static_cast<double>(i) / sample_rate_; }
    int periods() const noexcept { return periods_; }
    double samples_per_period() const noexcept { return sample_rate_ / f0_; }

private:
    std::vector<double> samples_;
    double sample_rate_;
    double f0_;
    int periods_;
};

struct HarmonicEntry {
    int order;
    double rms;
};

/// Per-harmonic RMS amplitudes, sorted by harmonic order.
class HarmonicSpectrum {
public:
    HarmonicSpectrum(double f0, std::vector<HarmonicEntry> entries);

    double f0() const noexcept { return f0_; }
    std::span<const HarmonicEntry> entries() const noexcept { return entries_; }

    /// RMS of harmonic `order`, zero when the spectrum does not hold it.
    double amplitude(int order) const noexcept;

    /// Root-sum-square of every entry.
    double total_rms() const noexcept;

private:
    double f0_;
    std::vector<HarmonicEntry> entries_;
};

namespace detail {

/// Value of sin(2*pi*k/P + phase) for sample index k of a period of P samples.
///
/// When P is an even integer and the phase is a whole number of samples the
/// angle is folded into the first quarter wave by integer arithmetic, so
/// sample-level half- and quarter-wave symmetry holds bit for bit.
double reference_sine(std::int64_t k, double samples_per_period, double phase);

}  // namespace detail

}  // namespace chbkit
