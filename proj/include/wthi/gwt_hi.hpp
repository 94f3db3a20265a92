// Closed-form rates for the symmetric Gaussian wiretap channel with a
// helping interferer:
//   Y1 = X1 + sqrt(a) X2 + N1
//   Y2 = sqrt(a) X1 + X2 + N2
// with unit-variance noise and average block power constraints.

#ifndef WTHI_GWT_HI_HPP
#define WTHI_GWT_HI_HPP

#include <string>
#include <vector>

namespace wthi {

struct GaussianWthi {
    double a = 0.0;      // cross-channel power gain
    double p1_max = 0.0; // transmitter power constraint
    double p2_max = 0.0; // interferer power constraint
};

struct PowerAllocation {
    double p1 = 0.0;
    double p2 = 0.0;
};

enum class Regime { VeryStrong, Strong, Weak };

std::string to_string(Regime r);

// The five mutual-information values at one receiver that define the MAC
// and treat-as-noise regions. For independent inputs the chain rule gives
// i1_given_2 + i2_alone == i_sum and i2_given_1 + i1_alone == i_sum.
struct MiProfile {
    double i1_given_2 = 0.0; // I(X1;Y|X2)
    double i2_given_1 = 0.0; // I(X2;Y|X1)
    double i_sum = 0.0;      // I(X1,X2;Y)
    double i1_alone = 0.0;   // I(X1;Y)
    double i2_alone = 0.0;   // I(X2;Y)
};

// Profiles at the intended receiver (Y1) and the eavesdropper (Y2).
struct MiProfilePair {
    MiProfile receiver;
    MiProfile eavesdropper;
};

/// VeryStrong iff a >= 1+p2; Strong iff 1 <= a < 1+p2; Weak iff a < 1.
Regime classify_regime(double a, double p2);

/// Mutual-information profiles at both receivers for Gaussian codebooks
/// with average powers (p1, p2).
MiProfilePair gaussian_mi_profile(double a, PowerAllocation alloc);

/// Secrecy capacity of the plain Gaussian wiretap channel (no interferer):
/// g(p1) - g(a*p1) for a < 1, otherwise 0.
double wiretap_baseline(double a, double p1);

/// Achievable secrecy rate of the symmetric GWT-HI at fixed powers,
/// piecewise in (a, p1, p2); never negative.
double secrecy_rate(double a, PowerAllocation alloc);

struct PowerControlResult {
    PowerAllocation alloc;
    double rate = 0.0;
};

/// Rate-maximizing power allocation under the channel's constraints.
/// For a >= 1 the transmitter backs off to a-1 (or goes silent when the
/// helper budget cannot exceed a-1); for a < 1 the helper caps its power.
PowerControlResult power_control(const GaussianWthi& ch);

/// Secrecy rate in the limit of unconstrained powers:
/// (1/2)log2(a) for a >= 1, log2(1/a) for a < 1. Requires a > 0.
double asymptotic_rate(double a);

enum class SweepVariable { Gain, P1Max, P2Max };

struct SweepRow {
    double value = 0.0;
    double rate = 0.0;
    double baseline = 0.0;
    Regime regime = Regime::Weak;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// One row per grid value; the swept variable overrides the corresponding
/// field of ch. With power control the evaluated allocation comes from
/// power_control, otherwise full powers (p1_max, p2_max) are used.
/// baseline is always the no-interferer wiretap rate at p1_max.
std::vector<SweepRow> sweep(const GaussianWthi& ch, SweepVariable variable,
                            const std::vector<double>& grid, bool with_power_control);

/// CSV with header value,rate_bits,baseline_bits,regime,p1,p2.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// JSON array of records with the same field names as the CSV columns.
std::string sweep_to_json(const std::vector<SweepRow>& rows);

} // namespace wthi

#endif
