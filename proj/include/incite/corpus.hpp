#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace incite {

enum class EventKind { CaaNrc, Covid19, Farmers, Custom };

/// Event a tweet belongs to. Ordering is CAA_NRC < COVID19 < FARMERS < custom,
/// custom labels ordered by name; this ordering is the classification tie-break.
class EventLabel {
public:
    EventLabel() = default;
    explicit EventLabel(EventKind kind, std::string custom_name = {});

    /// "CAA_NRC", "COVID19", "FARMERS"; anything else becomes a custom label.
    static EventLabel parse(std::string_view name);

    EventKind kind() const { return kind_; }
    std::string name() const;

    friend bool operator==(const EventLabel&, const EventLabel&) = default;
    friend std::strong_ordering operator<=>(const EventLabel& a, const EventLabel& b) {
        if (auto c = a.kind_ <=> b.kind_; c != 0) {
            return c;
        }
        return a.custom_ <=> b.custom_;
    }

private:
    EventKind kind_ = EventKind::Custom;
    std::string custom_;
};

using Timestamp = std::chrono::sys_seconds;

struct Tweet {
    std::string id;
    std::string user_id;
    std::string raw_text;
    std::string norm_text;
    Timestamp created_at{};
    std::optional<std::string> retweet_of_user;
    bool is_quote = false;
    std::optional<EventLabel> event;
    std::optional<bool> danger_label;

    /// An endorsement retweet. Quote tweets are original content of the quoter.
    bool is_retweet() const { return retweet_of_user.has_value() && !is_quote; }
};

enum class Party { BJP, INC, Other };
enum class UserCategory { Politician, Influencer, Unknown };

struct UserProfile {
    std::string id;
    std::uint64_t statuses_count = 0;
    std::uint64_t followers_count = 0;
    std::uint64_t friends_count = 0;
    std::uint64_t favourites_count = 0;
    bool verified = false;
    UserCategory category = UserCategory::Unknown;
    std::optional<Party> party;   // set iff category is Politician
    std::string influencer_kind;  // may be empty for influencers
    std::string description;
};

struct LexiconSet {
    EventLabel event;
    std::string target_group;
    std::set<std::string> lexica;
    std::set<std::string> negative_lexica;
    std::set<std::string> seed_keywords;
};

/// term -> dense vector, uniform dimension, no zero vectors.
class EmbeddingTable {
public:
    void add(std::string term, std::vector<double> vec);

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return terms_.size(); }
    bool contains(const std::string& term) const { return index_.contains(term); }
    std::optional<std::size_t> index_of(const std::string& term) const;

    const std::vector<std::string>& terms() const { return terms_; }
    std::span<const double> vector(std::size_t i) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::string> terms_;
    std::vector<double> data_;
    std::map<std::string, std::size_t> index_;
};

template <class T>
struct ParseResult {
    std::vector<T> records;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;
};

// Ingestion. A stream in a failed state is a DataError; a bad line is a
// warning and is skipped.
ParseResult<Tweet> parse_tweets(std::istream& in);
ParseResult<UserProfile> parse_users(std::istream& in);
/// One JSON document per line, or a single JSON array of documents.
std::vector<LexiconSet> parse_lexica(std::istream& in);
/// word2vec text format: optional "count dim" header, then "term v1 ... vd" per line.
EmbeddingTable read_embeddings(std::istream& in);

Timestamp parse_rfc3339(std::string_view text);

/// Case-folds and strips URLs, emoji/symbols and punctuation other than '#' and '@'.
std::string normalize_text(std::string_view raw);
std::vector<std::string> tokenize(std::string_view norm_text);

/// Term matching on normalized tokens. A plain term `t` matches token `t` and
/// hashtag `#t`; a term starting with '#' matches only itself; multi-word terms
/// match contiguous runs.
std::size_t count_term(std::span<const std::string> tokens, std::string_view term);
inline bool contains_term(std::span<const std::string> tokens, std::string_view term) {
    return count_term(tokens, term) > 0;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct SeedExpansion {
    std::set<std::string> terms;
    std::vector<std::string> dropped_seeds;
    int rounds = 0;
};

/// Grows the seed set by every vocabulary term with cosine >= tau to a member,
/// until nothing changes or `max_iter` rounds have run.
SeedExpansion expand_seed_keywords(const std::set<std::string>& seeds, const EmbeddingTable& table,
                                   double tau, int max_iter);

using KeywordSets = std::map<EventLabel, std::set<std::string>>;

std::optional<EventLabel> classify_event(const Tweet& tweet, const KeywordSets& keyword_sets);

std::vector<Tweet> filter_candidates(std::span<const Tweet> tweets, const LexiconSet& lex);

struct TermRatio {
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    std::optional<double> ratio;  // empty when count_b == 0
};

TermRatio term_frequency_ratio(std::span<const Tweet> tweets, std::string_view term_a,
                               std::string_view term_b);

std::string_view to_string(Party p);
std::string_view to_string(UserCategory c);

} // namespace incite
