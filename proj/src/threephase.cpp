#include "chbkit/threephase.hpp"

#include <cmath>
#include <fmt/format.h>
#include <future>

namespace chbkit {

namespace {

Waveform synthesize(const Modulator& modulator, const ChbConfig& cfg, double sample_rate, double phase)
{
    return std::visit(
        [&](const auto& m) -> Waveform {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NlsModulator>) {
                return nls_waveform(cfg, sample_rate, phase);
            } else {
                return pspwm_waveform(cfg, m.carriers, sample_rate, phase);
            }
        },
        modulator);
}

bool same_sampling(const Waveform& x, const Waveform& y)
{
    return x.size() == y.size() && x.sample_rate() == y.sample_rate() && x.f0() == y.f0();
}

}  // namespace

ThreePhaseSet::ThreePhaseSet(Waveform a, Waveform b, Waveform c)
    : phases_{std::move(a), std::move(b), std::move(c)}
{
    if (!same_sampling(phases_[0], phases_[1]) || !same_sampling(phases_[0], phases_[2])) {
        throw Error(ErrorCode::MismatchedSampling, "phases differ in length, sample rate or fundamental");
    }
}

ThreePhaseSet three_phase(const Modulator& modulator, const ChbConfig& cfg, double sample_rate, double phase)
{
    constexpr double kStep = 2.0 * kPi / 3.0;
    auto b = std::async(std::launch::async, [&] { return synthesize(modulator, cfg, sample_rate, phase - kStep); });
    auto c = std::async(std::launch::async,
                        [&] { return synthesize(modulator, cfg, sample_rate, phase - 2.0 * kStep); });
    Waveform a = synthesize(modulator, cfg, sample_rate, phase);
    return ThreePhaseSet(std::move(a), b.get(), c.get());
}

Waveform line_line(const ThreePhaseSet& set)
{
    const auto a = set.a().samples();
    const auto b = set.b().samples();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return Waveform(std::move(out), set.a().sample_rate(), set.a().f0());
}

double three_phase_power(double v_phase_rms, double i_phase_rms, double pf)
{
    if (!(pf >= 0.0 && pf <= 1.0)) {
        throw Error(ErrorCode::PfOutOfRange, fmt::format("power factor must be in [0, 1], got {}", pf));
    }
    return 3.0 * v_phase_rms * i_phase_rms * pf;
}

}  // namespace chbkit
