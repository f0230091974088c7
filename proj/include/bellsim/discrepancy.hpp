#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace bellsim {

/// Area a quoted figure belongs to; reports include the topics they touch.
enum class ClaimTopic { Chsh, SpeedBound, Geometry, ProperTime, Scales };

/// A published figure next to the value the implemented formula produces.
struct Discrepancy {
    std::string claim_id;
    std::string location;
    double quoted_value = 0.0;
    double computed_value = 0.0;
    ClaimTopic topic = ClaimTopic::Chsh;

    /// |computed - quoted| / |quoted|.
    double relative_difference() const;
};

/// Full ledger in a fixed order; recomputed from the library on every call.
std::vector<Discrepancy> discrepancy_ledger();

std::vector<Discrepancy> discrepancy_ledger(std::initializer_list<ClaimTopic> topics);

/// CSV with columns claim_id,paper_location,paper_value,computed_value,relative_difference.
std::string discrepancy_csv(const std::vector<Discrepancy>& rows);

}  // namespace bellsim
