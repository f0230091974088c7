#include "bellsim/link_budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellsim {

double geometric_loss_db(double reference_length_m, double length_m) {
    if (!(reference_length_m > 0.0) || !(length_m > 0.0)) {
        throw std::invalid_argument("geometric_loss_db: lengths must be > 0");
    }
    return 20.0 * std::log10(length_m / reference_length_m);
}

double link_loss_db(const LinkSpec& link) {
    if (!(link.reference_loss_db >= 0.0)) throw std::invalid_argument("link: reference loss must be >= 0 dB");
    if (!(link.detector_efficiency > 0.0 && link.detector_efficiency <= 1.0)) {
        throw std::invalid_argument("link: detector efficiency must be in (0, 1]");
    }
    return link.reference_loss_db + std::max(0.0, geometric_loss_db(link.reference_length_m, link.length_m));
}

SignificancePlan pairs_for_significance(double s_expected, double k_sigma) {
    if (!(s_expected > kClassicalBound)) {
        throw std::invalid_argument("pairs_for_significance: expected S must exceed 2");
    }
    if (!(k_sigma > 0.0) || !std::isfinite(k_sigma)) {
        throw std::invalid_argument("pairs_for_significance: k_sigma must be > 0");
    }
    const double variance_sum = 4.0 * (1.0 - kStandardCorrelation * kStandardCorrelation);
    const double margin = (s_expected - kClassicalBound) / k_sigma;
    auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(variance_sum / (margin * margin))));
    // Guard the ceiling against rounding in the closed form.
    auto meets = [&](std::uint64_t m) {
        return (s_expected - kClassicalBound) / std::sqrt(variance_sum / static_cast<double>(m)) >= k_sigma;
    };
    while (n > 1 && meets(n - 1)) --n;
    while (!meets(n)) ++n;
    return {s_expected, kClassicalBound, k_sigma, n, 4 * n};
}

double coincidence_rate(double pair_rate, double loss_a_db, double loss_b_db, double eff_a, double eff_b) {
    if (!(pair_rate > 0.0)) throw std::invalid_argument("coincidence_rate: pair rate must be > 0");
    if (!(loss_a_db >= 0.0) || !(loss_b_db >= 0.0)) throw std::invalid_argument("coincidence_rate: losses must be >= 0");
    if (!(eff_a > 0.0 && eff_a <= 1.0) || !(eff_b > 0.0 && eff_b <= 1.0)) {
        throw std::invalid_argument("coincidence_rate: efficiencies must be in (0, 1]");
    }
    return pair_rate * std::pow(10.0, -(loss_a_db + loss_b_db) / 10.0) * eff_a * eff_b;
}

IntegrationTime integration_time(double rate, std::uint64_t total_pairs, double cadence_threshold) {
    if (!(rate > 0.0)) throw std::invalid_argument("integration_time: rate must be > 0");
    return {static_cast<double>(total_pairs) / rate, cadence_threshold, rate >= cadence_threshold};
}

}  // namespace bellsim
