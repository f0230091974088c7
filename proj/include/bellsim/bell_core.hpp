#pragma once

#include <array>
#include <functional>

namespace bellsim {

/// Polarization analyzer orientation in radians, canonical in [0, pi).
class AnalyzerAngle {
public:
    constexpr AnalyzerAngle() = default;
    /// Throws std::domain_error for non-finite input.
    explicit AnalyzerAngle(double radians);

    double radians() const noexcept { return theta_; }
    double degrees() const noexcept;

    friend bool operator==(AnalyzerAngle, AnalyzerAngle) = default;

private:
    double theta_ = 0.0;
};

struct ChshSettings {
    AnalyzerAngle a;
    AnalyzerAngle a_prime;
    AnalyzerAngle b;
    AnalyzerAngle b_prime;

    /// a = 0, a' = pi/4, b = pi/8, b' = 3pi/8.
    static ChshSettings standard();

    /// Setting pairs in estimator order: (a,b), (a,b'), (a',b), (a',b').
    std::array<std::pair<AnalyzerAngle, AnalyzerAngle>, 4> pairs() const;
};

/// Signs of the four correlation terms in S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
inline constexpr std::array<int, 4> kChshSigns{+1, -1, +1, +1};

struct OutcomeDistribution {
    double p_pp = 0.0;
    double p_pm = 0.0;
    double p_mp = 0.0;
    double p_mm = 0.0;

    double correlation() const noexcept { return p_pp + p_mm - p_pm - p_mp; }
    double sum() const noexcept { return p_pp + p_pm + p_mp + p_mm; }
};

enum class CorrelationLaw { Quantum, Lhv };

/// E = cos 2(a - b) for the polarization singlet-like state.
double quantum_correlation(AnalyzerAngle a, AnalyzerAngle b);

/// Deterministic hidden-polarization model: sawtooth 1 - 4*delta/pi with the
/// relative angle folded into [0, pi/2].
double lhv_correlation(AnalyzerAngle a, AnalyzerAngle b);

double correlation(CorrelationLaw law, AnalyzerAngle a, AnalyzerAngle b);

/// Joint outcome table with unbiased marginals reproducing the law's correlation.
OutcomeDistribution outcome_distribution(CorrelationLaw law, AnalyzerAngle a, AnalyzerAngle b);

using CorrelationFn = std::function<double(AnalyzerAngle, AnalyzerAngle)>;

double chsh_value(const CorrelationFn& correlation, const ChshSettings& settings);

}  // namespace bellsim
