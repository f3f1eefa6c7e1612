#pragma once

#include "chbkit/core.hpp"
#include "chbkit/modulation.hpp"

#include <array>
#include <variant>

namespace chbkit {

struct NlsModulator {};

struct PspwmModulator {
    PspwmConfig carriers;
};

using Modulator = std::variant<NlsModulator, PspwmModulator>;

/// Balanced Y-connected set; each waveform is a line-neutral voltage.
class ThreePhaseSet {
public:
    ThreePhaseSet(Waveform a, Waveform b, Waveform c);

    const Waveform& a() const noexcept { return phases_[0]; }
    const Waveform& b() const noexcept { return phases_[1]; }
    const Waveform& c() const noexcept { return phases_[2]; }
    const Waveform& operator[](std::size_t i) const { return phases_.at(i); }

private:
    std::array<Waveform, 3> phases_;
};

/// Synthesizes phase k with its reference retarded by k*2*pi/3.
/// `phase` is a common shift applied to all three references.
ThreePhaseSet three_phase(const Modulator& modulator, const ChbConfig& cfg, double sample_rate,
                          double phase = 0.0);

/// Line-line voltage A - B.
Waveform line_line(const ThreePhaseSet& set);

/// Total real power 3*V*I*pf from per-phase RMS quantities.
double three_phase_power(double v_phase_rms, double i_phase_rms, double pf);

}  // namespace chbkit
