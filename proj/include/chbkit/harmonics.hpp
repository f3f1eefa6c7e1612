#pragma once

#include "chbkit/core.hpp"

namespace chbkit {

/// RMS split of a waveform. Analytic reports are per unit of the waveform
/// peak; numeric reports are in the waveform's own units.
struct ThdReport {
    double rms_total = 0.0;
    double rms_fundamental = 0.0;
    double thd = 0.0;

    double thd_percent() const noexcept { return 100.0 * thd; }
};

// Closed-form results for an ideal L-level nearest-level staircase, per unit
// of the waveform peak.

double rms_analytic(int levels);

/// Peak amplitude b_h of odd harmonic h. Throws EvenHarmonic for even h.
double fourier_bh(int levels, int h);

double first_harmonic_rms(int levels);

ThdReport thd_analytic(int levels);

// Numeric counterparts over a sampled waveform.

double rms_numeric(const Waveform& w);

/// RMS amplitude of harmonics 1..max_h by direct correlation over the whole
/// sampled span. Requires max_h*f0 below the Nyquist frequency.
HarmonicSpectrum spectrum(const Waveform& w, int max_h);

/// THD from the time-domain RMS and the correlated fundamental.
ThdReport thd_numeric(const Waveform& w);

/// Magnitude of 1/(1 + s*lf/r_load + s^2*lf*cf) at frequency `hz`: series
/// inductor, shunt capacitor, resistive load.
double lc_filter_gain(double hz, double lf, double cf, double r_load);

/// Applies the LC filter gain to every entry of `s`.
HarmonicSpectrum filtered_spectrum(const HarmonicSpectrum& s, double lf, double cf, double r_load);

}  // namespace chbkit
