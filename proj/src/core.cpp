#include "chbkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace chbkit {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::EvenLevels: return "EvenLevels";
    case ErrorCode::TooFewLevels: return "TooFewLevels";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::ModulationOutOfRange: return "ModulationOutOfRange";
    case ErrorCode::CellOutOfRange: return "CellOutOfRange";
    case ErrorCode::CellCountMismatch: return "CellCountMismatch";
    case ErrorCode::SampleRateTooLow: return "SampleRateTooLow";
    case ErrorCode::CarrierTooSlow: return "CarrierTooSlow";
    case ErrorCode::NonIntegerPeriod: return "NonIntegerPeriod";
    case ErrorCode::EmptyWaveform: return "EmptyWaveform";
    case ErrorCode::NyquistViolation: return "NyquistViolation";
    case ErrorCode::ZeroFundamental: return "ZeroFundamental";
    case ErrorCode::EvenHarmonic: return "EvenHarmonic";
    case ErrorCode::BoostRequired: return "BoostRequired";
    case ErrorCode::NotAchievable: return "NotAchievable";
    case ErrorCode::PfOutOfRange: return "PfOutOfRange";
    case ErrorCode::MismatchedSampling: return "MismatchedSampling";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), message)), code_(code)
{
}

ChbConfig ChbConfig::from_cells(int cells, double v_peak, double f0, double m_a)
{
    if (cells < 1) {
        throw Error(ErrorCode::TooFewLevels, fmt::format("need at least one cell, got {}", cells));
    }
    return validate_config(ChbConfig{2 * cells + 1, v_peak, f0, m_a});
}

void validate_levels(int levels)
{
    if (levels < 3) {
        throw Error(ErrorCode::TooFewLevels, fmt::format("level count must be at least 3, got {}", levels));
    }
    if (levels % 2 == 0) {
        throw Error(ErrorCode::EvenLevels, fmt::format("level count must be odd, got {}", levels));
    }
}

ChbConfig validate_config(const ChbConfig& cfg)
{
    validate_levels(cfg.levels);
    if (!(cfg.v_peak > 0.0) || !std::isfinite(cfg.v_peak)) {
        throw Error(ErrorCode::NonPositive, fmt::format("v_peak must be positive, got {}", cfg.v_peak));
    }
    if (!(cfg.f0 > 0.0) || !std::isfinite(cfg.f0)) {
        throw Error(ErrorCode::NonPositive, fmt::format("f0 must be positive, got {}", cfg.f0));
    }
    if (!(cfg.m_a > 0.0 && cfg.m_a <= 1.0)) {
        throw Error(ErrorCode::NonPositive, fmt::format("modulation index must be in (0, 1], got {}", cfg.m_a));
    }
    return cfg;
}

SwitchingAngles::SwitchingAngles(int levels) : levels_(levels)
{
    validate_levels(levels);
    const int cells = (levels - 1) / 2;
    angles_.reserve(static_cast<std::size_t>(cells));
    for (int i = 0; i < cells; ++i) {
        angles_.push_back(std::asin(static_cast<double>(2 * i + 1) / (levels - 1)));
    }
}

Waveform::Waveform(std::vector<double> samples, double sample_rate, double f0)
    : samples_(std::move(samples)), sample_rate_(sample_rate), f0_(f0), periods_(0)
{
    if (samples_.empty()) {
        throw Error(ErrorCode::EmptyWaveform, "waveform has no samples");
    }
    if (!(sample_rate_ > 0.0) || !(f0_ > 0.0)) {
        throw Error(ErrorCode::NonPositive, "sample rate and fundamental must be positive");
    }
    if (sample_rate_ < 64.0 * f0_) {
        throw Error(ErrorCode::SampleRateTooLow,
                    fmt::format("sample rate {} Hz is below 64 x f0 ({} Hz)", sample_rate_, 64.0 * f0_));
    }
    const double periods = static_cast<double>(samples_.size()) * f0_ / sample_rate_;
    const double whole = std::round(periods);
    if (whole < 1.0 || std::abs(periods - whole) > 1e-9 * std::max(1.0, periods)) {
        throw Error(ErrorCode::NonIntegerPeriod,
                    fmt::format("{} samples at {} Hz span {} periods of {} Hz", samples_.size(), sample_rate_,
                                periods, f0_));
    }
    periods_ = static_cast<int>(whole);
}

HarmonicSpectrum::HarmonicSpectrum(double f0, std::vector<HarmonicEntry> entries)
    : f0_(f0), entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end(),
              [](const HarmonicEntry& a, const HarmonicEntry& b) { return a.order < b.order; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].order < 1) {
            throw Error(ErrorCode::NonPositive, "harmonic order must be positive");
        }
        if (!(entries_[i].rms >= 0.0)) {
            throw Error(ErrorCode::NonPositive, "harmonic amplitude must be non-negative");
        }
        if (i > 0 && entries_[i].order == entries_[i - 1].order) {
            throw Error(ErrorCode::NonPositive, fmt::format("duplicate harmonic order {}", entries_[i].order));
        }
    }
}

double HarmonicSpectrum::amplitude(int order) const noexcept
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), order,
                               [](const HarmonicEntry& e, int h) { return e.order < h; });
    return (it != entries_.end() && it->order == order) ? it->rms : 0.0;
}

double HarmonicSpectrum::total_rms() const noexcept
{
    double sum = 0.0;
    for (const auto& e : entries_) {
        sum += e.rms * e.rms;
    }
    return std::sqrt(sum);
}

namespace detail {

double reference_sine(std::int64_t k, double samples_per_period, double phase)
{
    const double whole_period = std::round(samples_per_period);
    const double shift = phase * samples_per_period / (2.0 * kPi);
    const double whole_shift = std::round(shift);
    const bool integral = std::abs(samples_per_period - whole_period) < 1e-9 * samples_per_period &&
                          std::abs(shift - whole_shift) < 1e-9 * std::max(1.0, std::abs(shift));
    if (!integral) {
        return std::sin(2.0 * kPi * static_cast<double>(k) / samples_per_period + phase);
    }

    const auto period = static_cast<std::int64_t>(whole_period);
    std::int64_t r = (k + static_cast<std::int64_t>(whole_shift)) % period;
    if (r < 0) {
        r += period;
    }
    if (period % 2 != 0) {
        return std::sin(2.0 * kPi * static_cast<double>(r) / whole_period);
    }
    const std::int64_t half = period / 2;
    const bool negative = r >= half;
    const std::int64_t q = r % half;
    const std::int64_t folded = std::min(q, half - q);
    const double s = std::sin(2.0 * kPi * static_cast<double>(folded) / whole_period);
    return negative ? -s : s;
}

}  // namespace detail

}  // namespace chbkit
