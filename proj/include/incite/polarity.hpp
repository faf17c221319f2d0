#pragma once

#include "incite/corpus.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>

namespace incite {

/// Politicians of each party following one account, with the party totals.
struct PartyFollowing {
    std::uint64_t bjp = 0;
    std::uint64_t inc = 0;
    std::uint64_t total_bjp = 0;
    std::uint64_t total_inc = 0;
};

struct FollowerPolarity {
    double score = 0.0;       // ln(1 + chi2) when significant, else 0
    double chi_square = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

/// Chi-square goodness of fit of (bjp, inc) against the party totals, 1 df,
/// gated at alpha.
FollowerPolarity follower_polarity(const PartyFollowing& pf, double alpha = 0.005);

/// user -> stance in [-1, 1]; the sign only distinguishes the two sides.
struct StanceTable {
    std::map<std::string, double> stance;
    std::string provenance;
};

ParseResult<std::pair<std::string, double>> parse_stances(std::istream& in);
StanceTable make_stance_table(const ParseResult<std::pair<std::string, double>>& parsed,
                              std::string provenance);

/// Line-delimited {"user_id", "bjp", "inc"} politician-follower counts.
ParseResult<std::pair<std::string, std::pair<std::uint64_t, std::uint64_t>>>
parse_following(std::istream& in);

/// |sum w_i s_i| / sum w_i over the author's retweeters that have a stance.
/// The author is never counted as their own retweeter.
/// Throws UndefinedResult when no retweeter has a stance.
double retweet_polarity(std::string_view author,
                        std::span<const std::pair<std::string, std::uint64_t>> retweeters,
                        const StanceTable& stances);

} // namespace incite
