#pragma once

#include "incite/corpus.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>

namespace incite {

struct AnnotationPair {
    std::string tweet_id;
    bool label_a = false;
    bool label_b = false;
};

struct AnnotationFile {
    ParseResult<AnnotationPair> pairs;
    std::size_t single_annotated = 0;  // lines carrying only one label, excluded
};

/// Line-delimited {"tweet_id", "label_a", "label_b"}. Repeated tweet ids keep
/// the first pair; lines missing one of the labels are excluded.
AnnotationFile parse_annotations(std::istream& in);

/// Dangerous only when both annotators say so.
inline bool resolve_label(const AnnotationPair& pair) { return pair.label_a && pair.label_b; }

struct KappaResult {
    double kappa = 0.0;
    double observed = 0.0;  // p_o
    double expected = 0.0;  // p_e
    std::size_t n = 0;
    bool degenerate = false;  // p_e == 1
};

KappaResult cohens_kappa(std::span<const AnnotationPair> pairs);

struct DangerCounts {
    std::map<std::string, std::uint64_t> per_user;  // every author, zero included
    std::set<std::string> dangerous_users;
    std::uint64_t dangerous_tweets = 0;
};

/// Requires every tweet to carry a resolved danger_label.
DangerCounts danger_counts(std::span<const Tweet> tweets);

} // namespace incite
