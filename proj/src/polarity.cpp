#include "incite/polarity.hpp"

#include "incite/distributions.hpp"
#include "incite/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <istream>

namespace incite {

FollowerPolarity follower_polarity(const PartyFollowing& pf, double alpha) {
    if (pf.total_bjp == 0 || pf.total_inc == 0) {
        throw InvalidArgument("follower_polarity: party totals must be positive");
    }
    FollowerPolarity r;
    const double n = static_cast<double>(pf.bjp) + static_cast<double>(pf.inc);
    if (n == 0.0) {
        return r;
    }
    const double nb = static_cast<double>(pf.total_bjp);
    const double ni = static_cast<double>(pf.total_inc);
    const double expected_b = n * nb / (nb + ni);
    const double expected_c = n - expected_b;
    const double db = static_cast<double>(pf.bjp) - expected_b;
    const double dc = static_cast<double>(pf.inc) - expected_c;
    r.chi_square = db * db / expected_b + dc * dc / expected_c;
    r.p_value = dist::chi_square_sf(r.chi_square, 1.0);
    r.significant = r.p_value <= alpha;
    r.score = r.significant ? std::log1p(r.chi_square) : 0.0;
    return r;
}

namespace {

template <class F>
void for_each_json_line(std::istream& in, const char* what, F&& handle) {
    if (!in) {
        throw DataError(std::string("cannot read ") + what + " stream");
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
        throw DataError(std::string("I/O error while reading ") + what);
    }
}

} // namespace

ParseResult<std::pair<std::string, double>> parse_stances(std::istream& in) {
    ParseResult<std::pair<std::string, double>> result;
    for_each_json_line(in, "stance", [&](const std::string& line, std::size_t lineno) {
        try {
            const auto j = nlohmann::json::parse(line);
            const auto user = j.at("user_id").get<std::string>();
            const auto& s = j.at("stance");
            if (!s.is_number()) {
                throw DataError("stance is not a number");
            }
            const double v = s.get<double>();
            if (!(std::abs(v) <= 1.0)) {
                throw DataError("stance outside [-1, 1]");
            }
            result.records.emplace_back(user, v);
        } catch (const std::exception& e) {
            ++result.skipped;
            result.warnings.push_back("stance line " + std::to_string(lineno) + ": " + e.what());
        }
    });
    return result;
}

StanceTable make_stance_table(const ParseResult<std::pair<std::string, double>>& parsed,
                              std::string provenance) {
    StanceTable t;
    t.provenance = std::move(provenance);
    for (const auto& [user, s] : parsed.records) {
        t.stance.insert_or_assign(user, s);
    }
    return t;
}

ParseResult<std::pair<std::string, std::pair<std::uint64_t, std::uint64_t>>>
parse_following(std::istream& in) {
    ParseResult<std::pair<std::string, std::pair<std::uint64_t, std::uint64_t>>> result;
    for_each_json_line(in, "following", [&](const std::string& line, std::size_t lineno) {
        try {
            const auto j = nlohmann::json::parse(line);
            const auto user = j.at("user_id").get<std::string>();
            const auto b = j.at("bjp");
            const auto c = j.at("inc");
            if (!b.is_number_unsigned() || !c.is_number_unsigned()) {
                throw DataError("counts must be nonnegative integers");
            }
            result.records.push_back({user, {b.get<std::uint64_t>(), c.get<std::uint64_t>()}});
        } catch (const std::exception& e) {
            ++result.skipped;
            result.warnings.push_back("following line " + std::to_string(lineno) + ": " + e.what());
        }
    });
    return result;
}

double retweet_polarity(std::string_view author,
                        std::span<const std::pair<std::string, std::uint64_t>> retweeters,
                        const StanceTable& stances) {
    double weighted = 0.0;
    double weight = 0.0;
    for (const auto& [user, count] : retweeters) {
        if (user == author || count == 0) {
            continue;
        }
        const auto it = stances.stance.find(user);
        if (it == stances.stance.end()) {
            continue;
        }
        weighted += static_cast<double>(count) * it->second;
        weight += static_cast<double>(count);
    }
    if (weight == 0.0) {
        throw UndefinedResult("retweet_polarity: no retweeter of " + std::string(author) + " has a stance");
    }
    return std::min(1.0, std::abs(weighted) / weight);
}

} // namespace incite
