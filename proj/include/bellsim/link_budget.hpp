#pragma once

#include <cstdint>

#include "bellsim/constants.hpp"

namespace bellsim {

/// One free-space arm: total loss is the reference loss plus L^-2 geometric
/// scaling beyond the reference length.
struct LinkSpec {
    double length_m = 0.0;
    double reference_length_m = 500e3;
    double reference_loss_db = 0.0;
    double detector_efficiency = 1.0;
};

/// 20 log10(length / reference). Throws std::invalid_argument on non-positive lengths.
double geometric_loss_db(double reference_length_m, double length_m);

/// reference_loss_db + geometric loss; arms shorter than the reference keep
/// the reference loss (no gain). Validates every field.
double link_loss_db(const LinkSpec& link);

/// Classical CHSH bound.
inline constexpr double kClassicalBound = 2.0;
/// |E| of every term at the standard settings.
inline constexpr double kStandardCorrelation = 0.70710678118654752440;

struct SignificancePlan {
    double s_expected = 0.0;
    double classical_bound = kClassicalBound;
    double k_sigma = 0.0;
    std::uint64_t pairs_per_setting = 0;
    std::uint64_t total_pairs = 0;
};

/// Smallest n per setting with (s_expected - 2) / sqrt(sum (1 - E_i^2) / n) >= k_sigma,
/// using |E_i| = sqrt(2)/2 for all four terms. Throws std::invalid_argument
/// unless s_expected > 2 and k_sigma > 0.
SignificancePlan pairs_for_significance(double s_expected, double k_sigma);

/// pair_rate * 10^(-loss_a/10) * 10^(-loss_b/10) * eff_a * eff_b.
double coincidence_rate(double pair_rate, double loss_a_db, double loss_b_db, double eff_a, double eff_b);

struct IntegrationTime {
    double seconds = 0.0;
    double cadence_threshold = 0.0;
    /// The detection cadence reaches the proper-time threshold.
    bool correction_applies = false;
};

/// total_pairs / rate, flagged against a proper-time cadence threshold.
/// Throws std::invalid_argument for a non-positive rate.
IntegrationTime integration_time(double rate, std::uint64_t total_pairs, double cadence_threshold);

}  // namespace bellsim
