#include "bellsim/bell_core.hpp"

#include <cmath>
#include <stdexcept>

#include "bellsim/constants.hpp"

namespace bellsim {

AnalyzerAngle::AnalyzerAngle(double radians) {
    if (!std::isfinite(radians)) throw std::domain_error("analyzer angle must be finite");
    double t = std::fmod(radians, kPi);
    if (t < 0.0) t += kPi;
    if (t >= kPi) t = 0.0;
    theta_ = t;
}

double AnalyzerAngle::degrees() const noexcept { return theta_ * 180.0 / kPi; }

ChshSettings ChshSettings::standard() {
    return {AnalyzerAngle(0.0), AnalyzerAngle(kPi / 4), AnalyzerAngle(kPi / 8), AnalyzerAngle(3 * kPi / 8)};
}

std::array<std::pair<AnalyzerAngle, AnalyzerAngle>, 4> ChshSettings::pairs() const {
    return {{{a, b}, {a, b_prime}, {a_prime, b}, {a_prime, b_prime}}};
}

double quantum_correlation(AnalyzerAngle a, AnalyzerAngle b) {
    return std::cos(2.0 * (a.radians() - b.radians()));
}

double lhv_correlation(AnalyzerAngle a, AnalyzerAngle b) {
    // Both angles live in [0, pi), so |a - b| < pi; fold onto [0, pi/2].
    double delta = std::abs(a.radians() - b.radians());
    if (delta > kPi / 2) delta = kPi - delta;
    return 1.0 - 4.0 * delta / kPi;
}

double correlation(CorrelationLaw law, AnalyzerAngle a, AnalyzerAngle b) {
    return law == CorrelationLaw::Quantum ? quantum_correlation(a, b) : lhv_correlation(a, b);
}

OutcomeDistribution outcome_distribution(CorrelationLaw law, AnalyzerAngle a, AnalyzerAngle b) {
    if (law == CorrelationLaw::Quantum) {
        const double c = std::cos(a.radians() - b.radians());
        const double s = std::sin(a.radians() - b.radians());
        return {0.5 * c * c, 0.5 * s * s, 0.5 * s * s, 0.5 * c * c};
    }
    const double e = lhv_correlation(a, b);
    const double same = 0.25 * (1.0 + e);
    const double diff = 0.25 * (1.0 - e);
    return {same, diff, diff, same};
}

double chsh_value(const CorrelationFn& correlation, const ChshSettings& settings) {
    const auto pairs = settings.pairs();
    double s = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        s += kChshSigns[i] * correlation(pairs[i].first, pairs[i].second);
    }
    return s;
}

}  // namespace bellsim
