#include "incite/corpus.hpp"

#include "incite/error.hpp"
#include "incite/kernels.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

namespace incite {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// EventLabel

EventLabel::EventLabel(EventKind kind, std::string custom_name)
    : kind_(kind), custom_(kind == EventKind::Custom ? std::move(custom_name) : std::string{}) {}

EventLabel EventLabel::parse(std::string_view name) {
    if (name == "CAA_NRC") {
        return EventLabel(EventKind::CaaNrc);
    }
    if (name == "COVID19") {
        return EventLabel(EventKind::Covid19);
    }
    if (name == "FARMERS") {
        return EventLabel(EventKind::Farmers);
    }
    if (name.empty()) {
        throw InvalidArgument("empty event name");
    }
    return EventLabel(EventKind::Custom, std::string(name));
}

std::string EventLabel::name() const {
    switch (kind_) {
    case EventKind::CaaNrc:
        return "CAA_NRC";
    case EventKind::Covid19:
        return "COVID19";
    case EventKind::Farmers:
        return "FARMERS";
    case EventKind::Custom:
        break;
    }
    return custom_;
}

std::string_view to_string(Party p) {
    switch (p) {
    case Party::BJP:
        return "BJP";
    case Party::INC:
        return "INC";
    case Party::Other:
        break;
    }
    return "other";
}

std::string_view to_string(UserCategory c) {
    switch (c) {
    case UserCategory::Politician:
        return "politician";
    case UserCategory::Influencer:
        return "influencer";
    case UserCategory::Unknown:
        break;
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Text normalization

namespace {

constexpr char32_t kReplacement = 0xFFFD;

std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(kReplacement);
            break;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_space(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f' ||
           cp == 0x00A0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 ||
           cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

bool is_ascii_alnum(char32_t cp) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
}

// Symbol, punctuation and emoji blocks. Everything else outside ASCII is
// treated as a letter of some script and kept.
bool is_symbol_or_emoji(char32_t cp) {
    return (cp >= 0x00A1 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
           (cp >= 0x2000 && cp <= 0x2BFF) ||   // punctuation, symbols, arrows, dingbats
           (cp >= 0x3000 && cp <= 0x303F) ||   // CJK punctuation
           (cp >= 0xFE00 && cp <= 0xFE0F) ||   // variation selectors
           (cp >= 0xFE30 && cp <= 0xFE4F) ||
           (cp >= 0xFF00 && cp <= 0xFF0F) ||
           (cp >= 0xFFF0 && cp <= 0xFFFF) ||   // specials, replacement char
           (cp >= 0x1F000 && cp <= 0x1FAFF) || // emoji, pictographs, flags
           (cp >= 0xE0000 && cp <= 0xE007F);   // tag characters
}

char32_t fold_case(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') {
        return cp + 0x20;
    }
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) {
        return cp + 0x20;
    }
    return cp;
}

bool starts_with_ci(const std::vector<char32_t>& cps, std::size_t at, std::string_view prefix) {
    if (at + prefix.size() > cps.size()) {
        return false;
    }
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        if (fold_case(cps[at + k]) != static_cast<char32_t>(prefix[k])) {
            return false;
        }
    }
    return true;
}

bool url_starts_at(const std::vector<char32_t>& cps, std::size_t i) {
    if (starts_with_ci(cps, i, "http://") || starts_with_ci(cps, i, "https://")) {
        return true;
    }
    // Bare shortened links only at a token boundary, so "pt.co/" inside a word is left alone.
    const bool boundary = i == 0 || !is_ascii_alnum(cps[i - 1]);
    return boundary && starts_with_ci(cps, i, "t.co/");
}

} // namespace

std::string normalize_text(std::string_view raw) {
    const auto cps = decode_utf8(raw);
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    auto emit = [&](char32_t cp) {
        if (pending_space && !out.empty()) {
            out.push_back(' ');
        }
        pending_space = false;
        append_utf8(out, cp);
    };

    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        if (url_starts_at(cps, i)) {
            while (i + 1 < cps.size() && !is_space(cps[i + 1])) {
                ++i;
            }
            pending_space = true;
            continue;
        }
        if (is_space(cp)) {
            pending_space = true;
        } else if (is_ascii_alnum(cp) || cp == '#' || cp == '@') {
            emit(fold_case(cp));
        } else if (cp == '\'' || cp == 0x2019 || cp == 0x2018 || (cp >= 0x0300 && cp <= 0x036F)) {
            // apostrophes and combining marks are dropped in place: "don't" -> "dont"
        } else if (cp < 0x80 || is_symbol_or_emoji(cp)) {
            pending_space = true;
        } else {
            emit(fold_case(cp));
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view norm_text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < norm_text.size()) {
        while (i < norm_text.size() && norm_text[i] == ' ') {
            ++i;
        }
        const std::size_t start = i;
        while (i < norm_text.size() && norm_text[i] != ' ') {
            ++i;
        }
        if (i > start) {
            tokens.emplace_back(norm_text.substr(start, i - start));
        }
    }
    return tokens;
}

namespace {

bool token_matches(std::string_view token, std::string_view term_token) {
    if (token == term_token) {
        return true;
    }
    return term_token.front() != '#' && token.size() == term_token.size() + 1 &&
           token.front() == '#' && token.substr(1) == term_token;
}

} // namespace

std::size_t count_term(std::span<const std::string> tokens, std::string_view term) {
    const auto parts = tokenize(term);
    if (parts.empty() || parts.size() > tokens.size()) {
        return 0;
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i + parts.size() <= tokens.size(); ++i) {
        bool all = true;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (!token_matches(tokens[i + k], parts[k])) {
                all = false;
                break;
            }
        }
        if (all) {
            ++hits;
        }
    }
    return hits;
}

// ---------------------------------------------------------------------------
// Parsing

Timestamp parse_rfc3339(std::string_view text) {
    auto fail = [&]() -> Timestamp {
        throw DataError("bad RFC3339 timestamp '" + std::string(text) + "'");
    };
    auto num = [&](std::size_t pos, std::size_t len) {
        if (pos + len > text.size()) {
            fail();
        }
        int v = 0;
        const auto* first = text.data() + pos;
        const auto [ptr, ec] = std::from_chars(first, first + len, v);
        if (ec != std::errc{} || ptr != first + len) {
            fail();
        }
        return v;
    };
    if (text.size() < 20 || text[4] != '-' || text[7] != '-' ||
        (text[10] != 'T' && text[10] != 't' && text[10] != ' ') || text[13] != ':' ||
        text[16] != ':') {
        fail();
    }
    using namespace std::chrono;
    const year_month_day ymd{year{num(0, 4)}, month{static_cast<unsigned>(num(5, 2))},
                             day{static_cast<unsigned>(num(8, 2))}};
    const int hh = num(11, 2);
    const int mm = num(14, 2);
    const int ss = num(17, 2);
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) {
        fail();
    }
    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
        }
        if (pos == start) {
            fail();
        }
    }
    if (pos >= text.size()) {
        fail();
    }
    seconds offset{0};
    if (text[pos] == 'Z' || text[pos] == 'z') {
        ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
        if (pos + 6 != text.size() || text[pos + 3] != ':') {
            fail();
        }
        const int oh = num(pos + 1, 2);
        const int om = num(pos + 4, 2);
        offset = hours{oh} + minutes{om};
        if (text[pos] == '-') {
            offset = -offset;
        }
        pos += 6;
    } else {
        fail();
    }
    if (pos != text.size()) {
        fail();
    }
    return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} - offset;
}

namespace {

template <class F>
void for_each_line(std::istream& in, std::string_view what, F&& handle) {
    if (!in) {
        throw DataError(std::string("cannot read ") + std::string(what) + " stream");
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        handle(line, lineno);
    }
    if (in.bad()) {
        throw DataError(std::string("I/O error while reading ") + std::string(what));
    }
}

std::string require_string(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
        throw DataError(std::string("missing string field '") + key + "'");
    }
    return it->get<std::string>();
}

std::uint64_t require_count(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) {
        throw DataError(std::string("missing integer field '") + key + "'");
    }
    if (it->is_number_unsigned()) {
        return it->get<std::uint64_t>();
    }
    const auto v = it->get<std::int64_t>();
    if (v < 0) {
        throw DataError(std::string("negative count '") + key + "'");
    }
    return static_cast<std::uint64_t>(v);
}

bool optional_bool(const json& j, const char* key, bool fallback) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    if (!it->is_boolean()) {
        throw DataError(std::string("field '") + key + "' is not a boolean");
    }
    return it->get<bool>();
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw DataError(std::string("field '") + key + "' is not a string");
    }
    return it->get<std::string>();
}

std::string lower_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
    });
    return s;
}

} // namespace

ParseResult<Tweet> parse_tweets(std::istream& in) {
    ParseResult<Tweet> result;
    for_each_line(in, "tweet", [&](const std::string& line, std::size_t lineno) {
        try {
            const auto j = json::parse(line);
            if (!j.is_object()) {
                throw DataError("record is not an object");
            }
            Tweet t;
            t.id = require_string(j, "id");
            t.user_id = require_string(j, "user_id");
            t.raw_text = require_string(j, "text");
            t.created_at = parse_rfc3339(require_string(j, "created_at"));
            t.retweet_of_user = optional_string(j, "retweet_of_user");
            t.is_quote = optional_bool(j, "is_quote", false);
            if (t.id.empty() || t.user_id.empty()) {
                throw DataError("empty id");
            }
            if (t.retweet_of_user && *t.retweet_of_user == t.user_id) {
                throw DataError("retweet_of_user equals user_id");
            }
            t.norm_text = normalize_text(t.raw_text);
            result.records.push_back(std::move(t));
        } catch (const std::exception& e) {
            ++result.skipped;
            result.warnings.push_back("tweet line " + std::to_string(lineno) + ": " + e.what());
        }
    });
    return result;
}

ParseResult<UserProfile> parse_users(std::istream& in) {
    ParseResult<UserProfile> result;
    for_each_line(in, "user", [&](const std::string& line, std::size_t lineno) {
        try {
            const auto j = json::parse(line);
            if (!j.is_object()) {
                throw DataError("record is not an object");
            }
            UserProfile u;
            u.id = require_string(j, "id");
            u.statuses_count = require_count(j, "statuses_count");
            u.followers_count = require_count(j, "followers_count");
            u.friends_count = require_count(j, "friends_count");
            u.favourites_count = require_count(j, "favourites_count");
            u.verified = optional_bool(j, "verified", false);
            u.description = optional_string(j, "description").value_or("");

            auto category = lower_ascii(optional_string(j, "category").value_or("unknown"));
            std::string kind = optional_string(j, "kind").value_or("");
            if (const auto colon = category.find(':'); colon != std::string::npos) {
                kind = category.substr(colon + 1);
                category.resize(colon);
            }
            if (category == "politician") {
                u.category = UserCategory::Politician;
                const auto party = optional_string(j, "party").value_or("");
                u.party = party == "BJP" ? Party::BJP : party == "INC" ? Party::INC : Party::Other;
            } else if (category == "influencer") {
                u.category = UserCategory::Influencer;
                u.influencer_kind = kind;
            } else {
                u.category = UserCategory::Unknown;
            }
            result.records.push_back(std::move(u));
        } catch (const std::exception& e) {
            ++result.skipped;
            result.warnings.push_back("user line " + std::to_string(lineno) + ": " + e.what());
        }
    });
    return result;
}

namespace {

std::set<std::string> normalized_terms(const json& doc, const char* key, const std::string& event) {
    std::set<std::string> out;
    const auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) {
        return out;
    }
    if (!it->is_array()) {
        throw DataError("lexicon " + event + ": '" + key + "' is not an array");
    }
    for (const auto& term : *it) {
        if (!term.is_string()) {
            throw DataError("lexicon " + event + ": non-string entry in '" + key + "'");
        }
        const auto raw = term.get<std::string>();
        const auto norm = normalize_text(raw);
        if (norm.empty() || norm != raw) {
            throw DataError("lexicon " + event + ": entry '" + raw + "' in '" + key +
                            "' is empty or not normalized");
        }
        out.insert(norm);
    }
    return out;
}

LexiconSet lexicon_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw DataError("lexicon document is not an object");
    }
    LexiconSet lex;
    const auto event = require_string(doc, "event");
    lex.event = EventLabel::parse(event);
    lex.target_group = optional_string(doc, "target_group").value_or("");
    lex.lexica = normalized_terms(doc, "lexica", event);
    lex.negative_lexica = normalized_terms(doc, "negative_lexica", event);
    lex.seed_keywords = normalized_terms(doc, "seed_keywords", event);
    for (const auto& t : lex.lexica) {
        if (lex.negative_lexica.contains(t)) {
            throw DataError("lexicon " + event + ": '" + t + "' is both a lexicon and a negative term");
        }
    }
    return lex;
}

} // namespace

std::vector<LexiconSet> parse_lexica(std::istream& in) {
    if (!in) {
        throw DataError("cannot read lexicon stream");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<LexiconSet> out;
    const auto first = text.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && text[first] == '[') {
            for (const auto& doc : json::parse(text)) {
                out.push_back(lexicon_from_json(doc));
            }
        } else {
            std::istringstream lines(text);
            std::string line;
            while (std::getline(lines, line)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    continue;
                }
                out.push_back(lexicon_from_json(json::parse(line)));
            }
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("lexicon config: ") + e.what());
    }
    std::set<EventLabel> seen;
    for (const auto& lex : out) {
        if (!seen.insert(lex.event).second) {
            throw DataError("lexicon config: duplicate event " + lex.event.name());
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LexiconSet& a, const LexiconSet& b) { return a.event < b.event; });
    return out;
}

// ---------------------------------------------------------------------------
// Embeddings and seed expansion

void EmbeddingTable::add(std::string term, std::vector<double> vec) {
    if (vec.empty()) {
        throw InvalidArgument("embedding for '" + term + "' is empty");
    }
    if (dim_ == 0) {
        dim_ = vec.size();
    } else if (vec.size() != dim_) {
        throw InvalidArgument("embedding for '" + term + "' has dimension " +
                              std::to_string(vec.size()) + ", expected " + std::to_string(dim_));
    }
    if (std::all_of(vec.begin(), vec.end(), [](double v) { return v == 0.0; })) {
        throw InvalidArgument("embedding for '" + term + "' is the zero vector");
    }
    if (index_.contains(term)) {
        throw InvalidArgument("duplicate embedding term '" + term + "'");
    }
    index_.emplace(term, terms_.size());
    terms_.push_back(std::move(term));
    data_.insert(data_.end(), vec.begin(), vec.end());
}

std::optional<std::size_t> EmbeddingTable::index_of(const std::string& term) const {
    const auto it = index_.find(term);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::span<const double> EmbeddingTable::vector(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
}

EmbeddingTable read_embeddings(std::istream& in) {
    EmbeddingTable table;
    bool first = true;
    for_each_line(in, "embedding", [&](const std::string& line, std::size_t lineno) {
        std::istringstream fields(line);
        std::string term;
        fields >> term;
        std::vector<double> vec;
        std::string tok;
        while (fields >> tok) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw DataError("embedding line " + std::to_string(lineno) + ": bad number '" + tok + "'");
            }
            vec.push_back(v);
        }
        const bool header = first && vec.size() == 1 &&
                            std::all_of(term.begin(), term.end(), [](char c) { return c >= '0' && c <= '9'; });
        first = false;
        if (header) {
            return;
        }
        try {
            table.add(term, std::move(vec));
        } catch (const InvalidArgument& e) {
            throw DataError("embedding line " + std::to_string(lineno) + ": " + e.what());
        }
    });
    return table;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("cosine_similarity: dimension mismatch");
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw InvalidArgument("cosine_similarity: zero vector");
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

SeedExpansion expand_seed_keywords(const std::set<std::string>& seeds, const EmbeddingTable& table,
                                   double tau, int max_iter) {
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw InvalidArgument("expand_seed_keywords: tau must lie in (0, 1]");
    }
    if (max_iter < 0) {
        throw InvalidArgument("expand_seed_keywords: negative max_iter");
    }
    SeedExpansion result;
    const std::size_t n = table.size();
    const std::size_t dim = table.dimension();
    std::vector<char> member(n, 0);
    std::vector<std::size_t> probe;
    for (const auto& s : seeds) {
        if (const auto i = table.index_of(s)) {
            member[*i] = 1;
            probe.push_back(*i);
            result.terms.insert(s);
        } else {
            result.dropped_seeds.push_back(s);
        }
    }
    if (result.terms.empty()) {
        throw InvalidArgument("expand_seed_keywords: no seed keyword has an embedding");
    }

    std::vector<double> unit(n * dim);
    for (std::size_t t = 0; t < n; ++t) {
        const auto v = table.vector(t);
        double norm = 0.0;
        for (double x : v) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (std::size_t d = 0; d < dim; ++d) {
            unit[t * dim + d] = v[d] / norm;
        }
    }

    // Only members added in the previous round can pull in new terms.
    std::vector<char> flag(n);
    for (int round = 0; round < max_iter; ++round) {
        std::fill(flag.begin(), flag.end(), 0);
        kernels::parallel::mark_similar(unit, dim, probe, member, tau, flag);
        probe.clear();
        for (std::size_t t = 0; t < n; ++t) {
            if (flag[t]) {
                member[t] = 1;
                probe.push_back(t);
                result.terms.insert(table.terms()[t]);
            }
        }
        if (probe.empty()) {
            break;
        }
        ++result.rounds;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Classification and filtering

std::optional<EventLabel> classify_event(const Tweet& tweet, const KeywordSets& keyword_sets) {
    const auto tokens = tokenize(tweet.norm_text);
    std::optional<EventLabel> best;
    std::size_t best_hits = 0;
    // Map order is the tie-break order; only a strictly larger count replaces.
    for (const auto& [label, terms] : keyword_sets) {
        std::size_t hits = 0;
        for (const auto& term : terms) {
            if (contains_term(tokens, term)) {
                ++hits;
            }
        }
        if (hits > best_hits) {
            best_hits = hits;
            best = label;
        }
    }
    return best;
}

std::vector<Tweet> filter_candidates(std::span<const Tweet> tweets, const LexiconSet& lex) {
    std::vector<Tweet> out;
    for (const auto& t : tweets) {
        const auto tokens = tokenize(t.norm_text);
        const bool dangerous = std::any_of(lex.lexica.begin(), lex.lexica.end(),
                                           [&](const std::string& term) { return contains_term(tokens, term); });
        if (!dangerous) {
            continue;
        }
        const bool countered = std::any_of(lex.negative_lexica.begin(), lex.negative_lexica.end(),
                                           [&](const std::string& term) { return contains_term(tokens, term); });
        if (!countered) {
            out.push_back(t);
        }
    }
    return out;
}

TermRatio term_frequency_ratio(std::span<const Tweet> tweets, std::string_view term_a,
                               std::string_view term_b) {
    TermRatio r;
    for (const auto& t : tweets) {
        const auto tokens = tokenize(t.norm_text);
        r.count_a += count_term(tokens, term_a);
        r.count_b += count_term(tokens, term_b);
    }
    if (r.count_b > 0) {
        r.ratio = static_cast<double>(r.count_a) / static_cast<double>(r.count_b);
    }
    return r;
}

} // namespace incite
