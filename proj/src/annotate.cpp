#include "incite/annotate.hpp"

#include "incite/error.hpp"

#include <nlohmann/json.hpp>

#include <istream>

namespace incite {

AnnotationFile parse_annotations(std::istream& in) {
    if (!in) {
        throw DataError("cannot read annotation stream");
    }
    AnnotationFile file;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto warn = [&](const std::string& msg) {
            ++file.pairs.skipped;
            file.pairs.warnings.push_back("annotation line " + std::to_string(lineno) + ": " + msg);
        };
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            warn(e.what());
            continue;
        }
        if (!j.is_object() || !j.contains("tweet_id") || !j["tweet_id"].is_string()) {
            warn("missing tweet_id");
            continue;
        }
        const auto has_a = j.contains("label_a") && j["label_a"].is_boolean();
        const auto has_b = j.contains("label_b") && j["label_b"].is_boolean();
        if (has_a != has_b) {
            ++file.single_annotated;
            continue;
        }
        if (!has_a) {
            warn("no boolean labels");
            continue;
        }
        AnnotationPair pair{j["tweet_id"].get<std::string>(), j["label_a"].get<bool>(),
                            j["label_b"].get<bool>()};
        if (!seen.insert(pair.tweet_id).second) {
            warn("duplicate tweet_id " + pair.tweet_id);
            continue;
        }
        file.pairs.records.push_back(std::move(pair));
    }
    if (in.bad()) {
        throw DataError("I/O error while reading annotations");
    }
    return file;
}

KappaResult cohens_kappa(std::span<const AnnotationPair> pairs) {
    if (pairs.empty()) {
        throw InvalidArgument("cohens_kappa: no annotation pairs");
    }
    std::size_t agree = 0;
    std::size_t a_yes = 0;
    std::size_t b_yes = 0;
    for (const auto& p : pairs) {
        agree += p.label_a == p.label_b ? 1 : 0;
        a_yes += p.label_a ? 1 : 0;
        b_yes += p.label_b ? 1 : 0;
    }
    const double n = static_cast<double>(pairs.size());
    const double pa = static_cast<double>(a_yes) / n;
    const double pb = static_cast<double>(b_yes) / n;

    KappaResult r;
    r.n = pairs.size();
    r.observed = static_cast<double>(agree) / n;
    r.expected = pa * pb + (1.0 - pa) * (1.0 - pb);
    // p_e == 1 only when both annotators used a single identical label throughout.
    if ((a_yes == 0 || a_yes == pairs.size()) && a_yes == b_yes) {
        r.expected = 1.0;
        r.degenerate = true;
        r.kappa = r.observed == 1.0 ? 1.0 : 0.0;
        return r;
    }
    r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
    return r;
}

DangerCounts danger_counts(std::span<const Tweet> tweets) {
    DangerCounts out;
    for (const auto& t : tweets) {
        if (!t.danger_label.has_value()) {
            throw InvalidArgument("danger_counts: tweet " + t.id + " has no resolved label");
        }
        auto& count = out.per_user[t.user_id];
        if (*t.danger_label) {
            ++count;
            ++out.dangerous_tweets;
            out.dangerous_users.insert(t.user_id);
        }
    }
    return out;
}

} // namespace incite
