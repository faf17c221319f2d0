#include "incite/pipeline.hpp"

#include "incite/annotate.hpp"
#include "incite/csv.hpp"
#include "incite/diffusion.hpp"
#include "incite/error.hpp"
#include "incite/gexf.hpp"
#include "incite/graph.hpp"
#include "incite/polarity.hpp"
#include "incite/stats.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <omp.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace incite {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) {
            out.push_back(item.substr(b, e - b + 1));
        }
    }
    return out;
}

template <class T>
T parse_number(const std::string& section, const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T v{};
    in >> v;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw ConfigError("[" + section + "] " + key + ": cannot parse '" + text + "'");
    }
    if constexpr (std::is_unsigned_v<T>) {
        if (text.find('-') != std::string::npos) {
            throw ConfigError("[" + section + "] " + key + " must be nonnegative");
        }
    }
    return v;
}

} // namespace

PipelineConfig parse_config(std::istream& in, const fs::path& base_dir) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    PipelineConfig c;
    auto path = [&](const std::string& v) {
        const fs::path p(v);
        return p.is_absolute() ? p : base_dir / p;
    };
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, std::map<std::string, Setter>> schema{
        {"paths",
         {{"tweets", [&](const std::string& v) { c.tweets = path(v); }},
          {"users", [&](const std::string& v) { c.users = path(v); }},
          {"annotations", [&](const std::string& v) { c.annotations = path(v); }},
          {"stances", [&](const std::string& v) { c.stances = path(v); }},
          {"following", [&](const std::string& v) { c.following = path(v); }},
          {"lexica", [&](const std::string& v) { c.lexica = path(v); }},
          {"embeddings", [&](const std::string& v) { c.embeddings = path(v); }},
          {"output", [&](const std::string& v) { c.output = path(v); }}}},
        {"events",
         {{"names",
           [&](const std::string& v) {
               c.events.clear();
               for (const auto& name : split_list(v)) {
                   c.events.push_back(EventLabel::parse(name));
               }
           }}}},
        {"classify-events",
         {{"tau", [&](const std::string& v) { c.tau = parse_number<double>("classify-events", "tau", v); }},
          {"max_iter",
           [&](const std::string& v) { c.expand_max_iter = parse_number<int>("classify-events", "max_iter", v); }}}},
        {"dab", {{"t", [&](const std::string& v) { c.t = parse_number<int>("dab", "t", v); }}}},
        {"classify", {{"k", [&](const std::string& v) { c.k = parse_number<int>("classify", "k", v); }}}},
        {"polarity",
         {{"alpha", [&](const std::string& v) { c.polarity_alpha = parse_number<double>("polarity", "alpha", v); }},
          {"total_bjp",
           [&](const std::string& v) { c.total_bjp = parse_number<std::uint64_t>("polarity", "total_bjp", v); }},
          {"total_inc",
           [&](const std::string& v) { c.total_inc = parse_number<std::uint64_t>("polarity", "total_inc", v); }}}},
        {"stats",
         {{"alpha", [&](const std::string& v) { c.stats_alpha = parse_number<double>("stats", "alpha", v); }},
          {"bootstrap", [&](const std::string& v) { c.bootstrap = parse_number<int>("stats", "bootstrap", v); }},
          {"seed", [&](const std::string& v) { c.seed = parse_number<std::uint64_t>("stats", "seed", v); }}}},
        {"terms",
         {{"pairs",
           [&](const std::string& v) {
               c.term_pairs.clear();
               for (const auto& item : split_list(v)) {
                   const auto colon = item.find(':');
                   if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
                       throw ConfigError("[terms] pairs: expected a:b, got '" + item + "'");
                   }
                   c.term_pairs.emplace_back(item.substr(0, colon), item.substr(colon + 1));
               }
           }},
          {"description", [&](const std::string& v) { c.description_terms = split_list(v); }}}},
    };

    for (const auto& [section, body] : tree) {
        const auto s = schema.find(section);
        if (s == schema.end()) {
            throw ConfigError("config: unknown section [" + section + "]");
        }
        if (!body.data().empty()) {
            throw ConfigError("config: key outside a section: " + section);
        }
        for (const auto& [key, value] : body) {
            const auto k = s->second.find(key);
            if (k == s->second.end()) {
                throw ConfigError("config: unknown key '" + key + "' in [" + section + "]");
            }
            k->second(value.data());
        }
    }
    return c;
}

PipelineConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("cannot read config file " + file.string());
    }
    return parse_config(in, file.parent_path());
}

void validate(const PipelineConfig& c) {
    if (c.t < 1) {
        throw ConfigError("[dab] t must be at least 1, got " + std::to_string(c.t));
    }
    if (c.k < 2) {
        throw ConfigError("[classify] k must be at least 2, got " + std::to_string(c.k));
    }
    if (!(c.tau > 0.0 && c.tau <= 1.0)) {
        throw ConfigError("[classify-events] tau must lie in (0, 1]");
    }
    if (c.expand_max_iter < 0) {
        throw ConfigError("[classify-events] max_iter must be nonnegative");
    }
    if (!(c.polarity_alpha > 0.0 && c.polarity_alpha < 1.0) || !(c.stats_alpha > 0.0 && c.stats_alpha < 1.0)) {
        throw ConfigError("alpha must lie in (0, 1)");
    }
    if (c.total_bjp == 0 || c.total_inc == 0) {
        throw ConfigError("[polarity] party totals must be positive");
    }
    if (c.bootstrap < 1) {
        throw ConfigError("[stats] bootstrap must be positive");
    }
    const std::pair<const char*, const fs::path*> inputs[] = {
        {"tweets", &c.tweets},       {"users", &c.users},   {"annotations", &c.annotations},
        {"stances", &c.stances},     {"following", &c.following}, {"lexica", &c.lexica},
        {"embeddings", &c.embeddings},
    };
    for (const auto& [name, p] : inputs) {
        if (p->empty()) {
            throw ConfigError(std::string("[paths] ") + name + " is not set");
        }
        std::ifstream probe(*p);
        if (!probe) {
            throw ConfigError(std::string("[paths] ") + name + " is not readable: " + p->string());
        }
    }
    if (c.output.empty()) {
        throw ConfigError("[paths] output is not set");
    }
}

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names{"ingest",   "classify-events", "filter",     "kappa",
                                                "build-graph", "dab",          "classify",   "polarity",
                                                "centrality", "stats",         "terms",      "export-gexf",
                                                "report"};
    return names;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) {
        return 2;
    }
    if (dynamic_cast<const DataError*>(&e) || dynamic_cast<const InvalidArgument*>(&e)) {
        return 3;
    }
    if (dynamic_cast<const NumericError*>(&e) || dynamic_cast<const UndefinedResult*>(&e)) {
        return 4;
    }
    return 1;
}

void set_thread_count(int threads) {
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

// ---------------------------------------------------------------------------
// Artifacts and manifest

namespace {

std::string hex_digest(const unsigned char* data, unsigned int len) {
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += fmt::format("{:02x}", data[i]);
    }
    return out;
}

std::string sha256_bytes(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericError("sha256 failed");
    }
    return hex_digest(md, len);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + p.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_time(Timestamp t) {
    const std::time_t secs = t.time_since_epoch().count();
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string file_tag(const EventLabel& e) {
    std::string out;
    for (char ch : e.name()) {
        const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                          ch == '_' || ch == '-';
        out.push_back(keep ? ch : '_');
    }
    return out;
}

/// Files of one stage are written as `<name>.partial` and renamed only when
/// the whole stage succeeds.
class StageOutput {
public:
    StageOutput(fs::path dir, std::string stage) : dir_(std::move(dir)), stage_(std::move(stage)) {}

    std::ostream& open(const std::string& name) {
        auto& f = files_.emplace_back();
        f.name = name;
        f.stream = std::make_unique<std::ofstream>(dir_ / (name + ".partial"), std::ios::binary | std::ios::trunc);
        if (!*f.stream) {
            throw DataError("cannot write " + (dir_ / (name + ".partial")).string());
        }
        return *f.stream;
    }

    nlohmann::json commit() {
        nlohmann::json artifacts = nlohmann::json::object();
        for (auto& f : files_) {
            f.stream->close();
            if (!*f.stream) {
                throw DataError("write failed for " + f.name);
            }
        }
        for (auto& f : files_) {
            const auto partial = dir_ / (f.name + ".partial");
            const auto bytes = read_file(partial);
            nlohmann::json entry;
            entry["sha256"] = sha256_bytes(bytes);
            if (f.name.ends_with(".csv")) {
                const auto lines = static_cast<std::int64_t>(std::count(bytes.begin(), bytes.end(), '\n'));
                entry["rows"] = lines > 0 ? lines - 1 : 0;
            }
            fs::rename(partial, dir_ / f.name);
            artifacts[f.name] = std::move(entry);
        }
        return artifacts;
    }

private:
    struct File {
        std::string name;
        std::unique_ptr<std::ofstream> stream;
    };
    fs::path dir_;
    std::string stage_;
    std::vector<File> files_;
};

std::string canonical_config(const PipelineConfig& c) {
    std::ostringstream s;
    s << "events=";
    for (const auto& e : c.events) {
        s << e.name() << ';';
    }
    s << "\ntau=" << csv::number(c.tau) << "\nmax_iter=" << c.expand_max_iter << "\nt=" << c.t << "\nk=" << c.k
      << "\npolarity_alpha=" << csv::number(c.polarity_alpha) << "\ntotal_bjp=" << c.total_bjp
      << "\ntotal_inc=" << c.total_inc << "\nstats_alpha=" << csv::number(c.stats_alpha)
      << "\nbootstrap=" << c.bootstrap << "\nseed=" << c.seed << "\npairs=";
    for (const auto& [a, b] : c.term_pairs) {
        s << a << ':' << b << ';';
    }
    s << "\ndescription=";
    for (const auto& t : c.description_terms) {
        s << t << ';';
    }
    s << '\n';
    return s.str();
}

nlohmann::json manifest_header(const PipelineConfig& c) {
    nlohmann::json m;
    m["tool"] = "incite";
    m["version"] = std::string(kVersion);
    m["config_sha256"] = sha256_bytes(canonical_config(c));
    nlohmann::json inputs;
    const std::pair<const char*, const fs::path*> files[] = {
        {"tweets", &c.tweets},       {"users", &c.users},         {"annotations", &c.annotations},
        {"stances", &c.stances},     {"following", &c.following}, {"lexica", &c.lexica},
        {"embeddings", &c.embeddings},
    };
    for (const auto& [name, p] : files) {
        inputs[name] = sha256_bytes(read_file(*p));
    }
    m["inputs"] = std::move(inputs);
    m["stages"] = nlohmann::json::object();
    return m;
}

void record_stage(const PipelineConfig& c, const nlohmann::json& header, const std::string& stage,
                  nlohmann::json artifacts) {
    const auto path = c.output / "manifest.json";
    nlohmann::json m = header;
    if (fs::exists(path)) {
        try {
            auto old = nlohmann::json::parse(read_file(path));
            if (old.value("config_sha256", "") == header["config_sha256"] && old["inputs"] == header["inputs"] &&
                old.value("version", "") == header["version"] && old["stages"].is_object()) {
                m["stages"] = old["stages"];
            }
        } catch (const nlohmann::json::exception&) {
            // A corrupt manifest is replaced.
        }
    }
    nlohmann::json entry;
    entry["artifacts"] = std::move(artifacts);
    entry["completed_at"] = utc_now();
    m["stages"][stage] = std::move(entry);
    const auto partial = c.output / "manifest.json.partial";
    {
        std::ofstream out(partial, std::ios::binary | std::ios::trunc);
        out << m.dump(2) << '\n';
        if (!out) {
            throw DataError("cannot write manifest");
        }
    }
    fs::rename(partial, path);
}

// ---------------------------------------------------------------------------
// In-memory pipeline state, computed on demand from the raw inputs

std::ifstream open_input(const fs::path& p) {
    std::ifstream in(p);
    if (!in) {
        throw DataError("cannot read " + p.string());
    }
    return in;
}

double log1p_count(std::uint64_t v) { return std::log1p(static_cast<double>(v)); }

const EventLabel kMerged = EventLabel::parse("ALL");

struct EventState {
    EventLabel label;
    const LexiconSet* lexicon = nullptr;
    std::set<std::string> keywords;
    std::set<std::string> seeds;
    std::vector<Tweet> tweets;                // classified into the event, labels resolved
    std::vector<std::size_t> candidates;      // indices into tweets
    std::vector<AnnotationPair> pairs;        // dual annotations of candidates
    std::optional<KappaResult> kappa;
    DangerCounts counts;
    RetweetGraph graph;
    DabResult dab;
};

struct UserAttributes {
    std::map<std::string, std::optional<double>> values;
};

class Pipeline {
public:
    Pipeline(const PipelineConfig& config, std::ostream& log, std::ostream& warn)
        : c_(config), log_(log), warn_(warn) {}

    // ---- inputs
    void ensure_corpus() {
        if (corpus_ready_) {
            return;
        }
        auto in = open_input(c_.tweets);
        auto parsed = parse_tweets(in);
        tweets_skipped_ = parsed.skipped;
        report_warnings(parsed.warnings);
        std::set<std::string> ids;
        for (auto& t : parsed.records) {
            if (!ids.insert(t.id).second) {
                ++tweets_skipped_;
                warn_ << "warning: duplicate tweet id " << t.id << " skipped\n";
                continue;
            }
            tweets_.push_back(std::move(t));
        }
        auto uin = open_input(c_.users);
        auto users = parse_users(uin);
        users_skipped_ = users.skipped;
        report_warnings(users.warnings);
        for (auto& u : users.records) {
            const auto id = u.id;
            if (!users_.emplace(id, std::move(u)).second) {
                ++users_skipped_;
                warn_ << "warning: duplicate user id " << id << " skipped\n";
            }
        }
        corpus_ready_ = true;
    }

    void ensure_events() {
        if (events_ready_) {
            return;
        }
        ensure_corpus();
        auto lin = open_input(c_.lexica);
        lexica_ = parse_lexica(lin);
        std::vector<const LexiconSet*> chosen;
        if (c_.events.empty()) {
            for (const auto& l : lexica_) {
                chosen.push_back(&l);
            }
        } else {
            for (const auto& e : c_.events) {
                const auto it = std::find_if(lexica_.begin(), lexica_.end(),
                                             [&](const LexiconSet& l) { return l.event == e; });
                if (it == lexica_.end()) {
                    throw ConfigError("event " + e.name() + " has no lexicon entry");
                }
                chosen.push_back(&*it);
            }
            std::sort(chosen.begin(), chosen.end(),
                      [](const LexiconSet* a, const LexiconSet* b) { return a->event < b->event; });
            chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
        }
        if (chosen.empty()) {
            throw DataError("no events to process");
        }
        auto ein = open_input(c_.embeddings);
        const auto table = read_embeddings(ein);

        KeywordSets sets;
        for (const auto* lex : chosen) {
            EventState e;
            e.label = lex->event;
            e.lexicon = lex;
            e.seeds = lex->seed_keywords;
            const auto expansion = expand_seed_keywords(lex->seed_keywords, table, c_.tau, c_.expand_max_iter);
            for (const auto& s : expansion.dropped_seeds) {
                warn_ << "warning: seed keyword '" << s << "' of " << lex->event.name()
                      << " has no embedding, dropped\n";
            }
            e.keywords = expansion.terms;
            sets.emplace(e.label, e.keywords);
            events_.push_back(std::move(e));
        }
        tweet_event_.assign(tweets_.size(), std::nullopt);
        for (std::size_t i = 0; i < tweets_.size(); ++i) {
            tweet_event_[i] = classify_event(tweets_[i], sets);
            if (tweet_event_[i]) {
                auto& e = event(*tweet_event_[i]);
                Tweet t = tweets_[i];
                t.event = tweet_event_[i];
                t.danger_label = false;
                e.tweets.push_back(std::move(t));
            }
        }
        events_ready_ = true;
    }

    void ensure_candidates() {
        if (candidates_ready_) {
            return;
        }
        ensure_events();
        for (auto& e : events_) {
            // Candidates are original content; a retweet endorses, it does not author.
            std::vector<Tweet> originals;
            std::vector<std::size_t> index;
            for (std::size_t i = 0; i < e.tweets.size(); ++i) {
                if (!e.tweets[i].is_retweet()) {
                    originals.push_back(e.tweets[i]);
                    index.push_back(i);
                }
            }
            const auto kept = filter_candidates(originals, *e.lexicon);
            std::set<std::string> kept_ids;
            for (const auto& t : kept) {
                kept_ids.insert(t.id);
            }
            for (std::size_t j = 0; j < originals.size(); ++j) {
                if (kept_ids.count(originals[j].id)) {
                    e.candidates.push_back(index[j]);
                }
            }
        }
        candidates_ready_ = true;
    }

    void ensure_labels() {
        if (labels_ready_) {
            return;
        }
        ensure_candidates();
        auto in = open_input(c_.annotations);
        const auto file = parse_annotations(in);
        report_warnings(file.pairs.warnings);
        single_annotated_ = file.single_annotated;
        std::map<std::string, const AnnotationPair*> by_id;
        for (const auto& p : file.pairs.records) {
            by_id.emplace(p.tweet_id, &p);
        }
        std::size_t used = 0;
        for (auto& e : events_) {
            for (std::size_t idx : e.candidates) {
                auto& t = e.tweets[idx];
                const auto it = by_id.find(t.id);
                if (it == by_id.end()) {
                    continue;
                }
                e.pairs.push_back(*it->second);
                t.danger_label = resolve_label(*it->second);
                ++used;
            }
            if (!e.pairs.empty()) {
                e.kappa = cohens_kappa(e.pairs);
            } else {
                warn_ << "warning: no annotated candidates for " << e.label.name() << "\n";
            }
            e.counts = danger_counts(e.tweets);
        }
        if (used < file.pairs.records.size()) {
            warn_ << "warning: " << file.pairs.records.size() - used
                  << " annotations do not match a candidate tweet and were ignored\n";
        }
        labels_ready_ = true;
    }

    void ensure_graphs() {
        if (graphs_ready_) {
            return;
        }
        ensure_events();
        std::vector<Tweet> all;
        for (auto& e : events_) {
            e.graph = build_retweet_graph(e.tweets, e.label);
            all.insert(all.end(), e.tweets.begin(), e.tweets.end());
        }
        merged_ = build_retweet_graph(all, std::nullopt);
        graphs_ready_ = true;
    }

    void ensure_dab() {
        if (dab_ready_) {
            return;
        }
        ensure_labels();
        ensure_graphs();
        std::vector<ScoreMap> maps;
        for (auto& e : events_) {
            e.dab = classify_dab(compute_dab(e.graph, e.counts, c_.t), c_.k);
            ScoreMap m;
            for (std::size_t i = 0; i < e.dab.scores.users.size(); ++i) {
                m.emplace(e.dab.scores.users[i], e.dab.scores.normalized[i]);
            }
            maps.push_back(std::move(m));
        }
        const auto avg = average_dab(maps);
        DabScores s;
        s.iterations = c_.t;
        for (const auto& [user, score] : avg) {
            s.users.push_back(user);
            s.raw.push_back(score);
            s.normalized.push_back(score);
        }
        average_ = classify_dab(std::move(s), c_.k);
        dab_ready_ = true;
    }

    struct PolarityRow {
        std::optional<double> retweet;
        FollowerPolarity follower;
        std::uint64_t bjp = 0;
        std::uint64_t inc = 0;
    };

    void ensure_polarity() {
        if (polarity_ready_) {
            return;
        }
        ensure_dab();
        auto sin = open_input(c_.stances);
        const auto parsed = parse_stances(sin);
        report_warnings(parsed.warnings);
        const auto stances = make_stance_table(parsed, c_.stances.filename().string());
        auto fin = open_input(c_.following);
        const auto following = parse_following(fin);
        report_warnings(following.warnings);
        std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> follow;
        for (const auto& [user, counts] : following.records) {
            if (counts.first > c_.total_bjp || counts.second > c_.total_inc) {
                throw DataError("following counts of " + user + " exceed the party totals");
            }
            follow.insert_or_assign(user, counts);
        }
        const auto& in = merged_.in_weights();
        for (const auto& user : average_.scores.users) {
            PolarityRow row;
            if (const auto it = follow.find(user); it != follow.end()) {
                row.bjp = it->second.first;
                row.inc = it->second.second;
            }
            row.follower = follower_polarity({row.bjp, row.inc, c_.total_bjp, c_.total_inc}, c_.polarity_alpha);
            if (const auto v = merged_.index_of(user)) {
                std::vector<std::pair<std::string, std::uint64_t>> retweeters;
                const auto cols = in.row_columns(*v);
                const auto vals = in.row_values(*v);
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    retweeters.emplace_back(merged_.nodes()[cols[k]], static_cast<std::uint64_t>(vals[k]));
                }
                try {
                    row.retweet = retweet_polarity(user, retweeters, stances);
                } catch (const UndefinedResult&) {
                    row.retweet.reset();
                }
            }
            polarity_.emplace(user, row);
        }
        polarity_ready_ = true;
    }

    void ensure_centrality() {
        if (centrality_ready_) {
            return;
        }
        ensure_graphs();
        for (const auto& e : events_) {
            centrality_.emplace(e.label, centrality_report(e.graph));
        }
        centrality_.emplace(kMerged, centrality_report(merged_));
        centrality_ready_ = true;
    }

    // ---- stages

    void ingest(StageOutput& out) {
        ensure_corpus();
        auto& t = out.open("tweets_normalized.csv");
        csv::row(t, "tweet_id", "user_id", "created_at", "retweet_of_user", "is_quote", "is_retweet", "norm_text");
        for (const auto& tw : tweets_) {
            csv::row(t, tw.id, tw.user_id, format_time(tw.created_at), tw.retweet_of_user.value_or(""), tw.is_quote,
                     tw.is_retweet(), tw.norm_text);
        }
        auto& u = out.open("users_normalized.csv");
        csv::row(u, "user_id", "statuses_count", "followers_count", "friends_count", "favourites_count", "verified",
                 "category", "party", "influencer_kind");
        for (const auto& [id, p] : users_) {
            csv::row(u, id, p.statuses_count, p.followers_count, p.friends_count, p.favourites_count, p.verified,
                     std::string(to_string(p.category)), p.party ? std::string(to_string(*p.party)) : "",
                     p.influencer_kind);
        }
        auto& s = out.open("ingest_summary.csv");
        csv::row(s, "input", "records", "skipped");
        csv::row(s, "tweets", tweets_.size(), tweets_skipped_);
        csv::row(s, "users", users_.size(), users_skipped_);
        log_ << "ingest: " << tweets_.size() << " tweets (" << tweets_skipped_ << " skipped), " << users_.size()
             << " users (" << users_skipped_ << " skipped)\n";
    }

    void classify_events(StageOutput& out) {
        ensure_events();
        auto& k = out.open("event_keywords.csv");
        csv::row(k, "event", "term", "origin");
        for (const auto& e : events_) {
            for (const auto& term : e.keywords) {
                csv::row(k, e.label.name(), term, e.seeds.count(term) ? "seed" : "expanded");
            }
        }
        auto& te = out.open("tweet_events.csv");
        csv::row(te, "tweet_id", "event");
        for (std::size_t i = 0; i < tweets_.size(); ++i) {
            csv::row(te, tweets_[i].id, tweet_event_[i] ? tweet_event_[i]->name() : "NA");
        }
        auto& s = out.open("event_summary.csv");
        csv::row(s, "event", "keywords", "tweets", "originals", "retweets", "authors");
        std::size_t unclassified = tweets_.size();
        for (const auto& e : events_) {
            std::size_t retweets = 0;
            std::set<std::string> authors;
            for (const auto& t : e.tweets) {
                retweets += t.is_retweet() ? 1 : 0;
                authors.insert(t.user_id);
            }
            unclassified -= e.tweets.size();
            csv::row(s, e.label.name(), e.keywords.size(), e.tweets.size(), e.tweets.size() - retweets, retweets,
                     authors.size());
            log_ << "classify-events: " << e.label.name() << " " << e.tweets.size() << " tweets, "
                 << e.keywords.size() << " keywords\n";
        }
        log_ << "classify-events: " << unclassified << " tweets match no event\n";
    }

    void filter(StageOutput& out) {
        ensure_candidates();
        auto& f = out.open("candidates.csv");
        csv::row(f, "event", "tweet_id", "user_id");
        for (const auto& e : events_) {
            for (std::size_t idx : e.candidates) {
                csv::row(f, e.label.name(), e.tweets[idx].id, e.tweets[idx].user_id);
            }
            log_ << "filter: " << e.label.name() << " " << e.candidates.size() << " candidates\n";
        }
    }

    void kappa(StageOutput& out) {
        ensure_labels();
        auto& k = out.open("kappa.csv");
        csv::row(k, "event", "pairs", "observed", "expected", "kappa", "degenerate");
        for (const auto& e : events_) {
            if (e.kappa) {
                csv::row(k, e.label.name(), e.kappa->n, e.kappa->observed, e.kappa->expected, e.kappa->kappa,
                         e.kappa->degenerate);
                log_ << "kappa: " << e.label.name() << " " << csv::number(e.kappa->kappa) << " over "
                     << e.kappa->n << " pairs\n";
            } else {
                csv::row(k, e.label.name(), 0, "NA", "NA", "NA", "NA");
                log_ << "kappa: " << e.label.name() << " NA\n";
            }
        }
        auto& d = out.open("danger_summary.csv");
        csv::row(d, "event", "tweets", "candidates", "annotated", "dangerous_tweets", "dangerous_users", "authors");
        for (const auto& e : events_) {
            csv::row(d, e.label.name(), e.tweets.size(), e.candidates.size(), e.pairs.size(),
                     e.counts.dangerous_tweets, e.counts.dangerous_users.size(), e.counts.per_user.size());
        }
    }

    void build_graph(StageOutput& out) {
        ensure_graphs();
        auto& s = out.open("graph_summary.csv");
        csv::row(s, "scope", "nodes", "edges", "retweets", "originals", "degenerate_rows");
        auto summary = [&](const std::string& scope, const RetweetGraph& g) {
            std::uint64_t retweets = 0;
            std::uint64_t originals = 0;
            for (const auto& e : g.edges()) {
                retweets += e.weight;
            }
            for (auto c : g.original_counts()) {
                originals += c;
            }
            const auto t = transition(adjacency(g));
            const auto degenerate = std::count(t.degenerate.begin(), t.degenerate.end(), true);
            csv::row(s, scope, g.node_count(), g.edge_count(), retweets, originals, degenerate);
        };
        for (const auto& e : events_) {
            write_adjacency_csv(out.open("graph_" + file_tag(e.label) + "_adjacency.csv"), e.graph);
            summary(e.label.name(), e.graph);
            log_ << "build-graph: " << e.label.name() << " " << e.graph.node_count() << " nodes, "
                 << e.graph.edge_count() << " edges\n";
        }
        summary(kMerged.name(), merged_);
    }

    void dab(StageOutput& out) {
        ensure_dab();
        auto& d = out.open("dab_scores.csv");
        csv::row(d, "user_id", "event", "raw", "normalized");
        for (const auto& e : events_) {
            const auto& s = e.dab.scores;
            for (std::size_t i = 0; i < s.users.size(); ++i) {
                csv::row(d, s.users[i], e.label.name(), s.raw[i], s.normalized[i]);
            }
            write_ecdf(out.open("ecdf_" + file_tag(e.label) + ".csv"), s.normalized);
        }
    }

    void classify(StageOutput& out) {
        ensure_dab();
        auto& d = out.open("dab.csv");
        csv::row(d, "user_id", "event", "raw", "normalized", "category");
        auto& th = out.open("thresholds.csv");
        std::vector<std::string> header{"scope", "users"};
        for (int i = 1; i < c_.k; ++i) {
            header.push_back("theta_" + std::to_string(i));
        }
        for (const char* h : {"n", "m", "v", "dangerous_fraction"}) {
            header.emplace_back(h);
        }
        write_cells(th, header);
        auto threshold_row = [&](const std::string& scope, const DabResult& r) {
            std::vector<std::string> cells{scope, std::to_string(r.scores.users.size())};
            for (int i = 0; i + 1 < c_.k; ++i) {
                cells.push_back(static_cast<std::size_t>(i) < r.thresholds.size() ? csv::number(r.thresholds[i]) : "NA");
            }
            std::size_t n = 0;
            std::size_t m = 0;
            std::size_t v = 0;
            for (auto cat : r.dac.categories) {
                (cat == DangerCategory::N ? n : cat == DangerCategory::M ? m : v) += 1;
            }
            cells.push_back(std::to_string(n));
            cells.push_back(std::to_string(m));
            cells.push_back(std::to_string(v));
            cells.push_back(csv::number(r.dac.dangerous_fraction));
            write_cells(th, cells);
        };
        for (const auto& e : events_) {
            const auto& s = e.dab.scores;
            for (std::size_t i = 0; i < s.users.size(); ++i) {
                csv::row(d, s.users[i], e.label.name(), s.raw[i], s.normalized[i], to_char(e.dab.dac.categories[i]));
            }
            threshold_row(e.label.name(), e.dab);
            log_ << "classify: " << e.label.name() << " dangerous fraction "
                 << csv::number(e.dab.dac.dangerous_fraction) << "\n";
        }
        threshold_row("average", average_);
        auto& a = out.open("dab_average.csv");
        csv::row(a, "user_id", "average_normalized", "category");
        for (std::size_t i = 0; i < average_.scores.users.size(); ++i) {
            csv::row(a, average_.scores.users[i], average_.scores.normalized[i],
                     to_char(average_.dac.categories[i]));
        }
        write_ecdf(out.open("ecdf_average.csv"), average_.scores.normalized);
    }

    void polarity(StageOutput& out) {
        auto& p = out.open("polarity.csv");
        ensure_polarity();
        csv::row(p, "user_id", "retweet_polarity", "follower_polarity", "significant", "bjp_followers",
                 "inc_followers", "chi_square", "p_value");
        std::size_t defined = 0;
        for (const auto& [user, row] : polarity_) {
            defined += row.retweet ? 1 : 0;
            csv::row(p, user, row.retweet, row.follower.score, row.follower.significant, row.bjp, row.inc,
                     row.follower.chi_square, row.follower.p_value);
        }
        log_ << "polarity: " << polarity_.size() << " users, retweet polarity defined for " << defined << "\n";
    }

    void centrality(StageOutput& out) {
        ensure_centrality();
        auto& f = out.open("centrality.csv");
        csv::row(f, "scope", "user_id", "indegree", "harmonic", "eigenvector");
        auto emit = [&](const EventLabel& scope, const RetweetGraph& g) {
            const auto& r = centrality_.at(scope);
            if (!r.eigenvector.converged && !g.empty()) {
                warn_ << "warning: eigenvector centrality did not converge for " << scope.name() << "\n";
            }
            for (NodeId u = 0; u < g.node_count(); ++u) {
                csv::row(f, scope.name(), g.nodes()[u], r.indegree[u], r.harmonic[u], r.eigenvector.scores[u]);
            }
        };
        for (const auto& e : events_) {
            emit(e.label, e.graph);
        }
        emit(kMerged, merged_);
    }

    void stats(StageOutput& out) {
        ensure_polarity();
        ensure_centrality();
        const auto attributes = attribute_table();
        const auto& users = average_.scores.users;
        const std::vector<std::string> categories{"N", "M", "V"};

        auto& s = out.open("stats.csv");
        csv::row(s, "attribute", "n", "slope", "intercept", "slope_p", "anova_f", "anova_p", "df_between",
                 "df_within", "hsd_n_m", "hsd_n_v", "hsd_m_v");
        auto& g = out.open("group_summary.csv");
        csv::row(g, "attribute", "category", "n", "median", "ci_low", "ci_high", "replicates", "seed");

        for (const auto& [name, column] : attributes) {
            std::vector<double> x;
            std::vector<double> y;
            std::vector<std::vector<double>> groups(3);
            for (std::size_t i = 0; i < users.size(); ++i) {
                const auto& v = column[i];
                if (!v) {
                    continue;
                }
                x.push_back(average_.scores.normalized[i]);
                y.push_back(*v);
                groups[static_cast<std::size_t>(average_.dac.categories[i])].push_back(*v);
            }
            std::optional<RegressionResult> reg;
            if (x.size() >= 3) {
                try {
                    reg = linreg(x, y);
                } catch (const InvalidArgument&) {
                    reg.reset();
                }
            }
            std::vector<std::size_t> usable;
            for (std::size_t c = 0; c < groups.size(); ++c) {
                if (groups[c].size() >= 2) {
                    usable.push_back(c);
                }
            }
            std::optional<AnovaResult> anova;
            std::map<std::pair<std::size_t, std::size_t>, std::string> verdict;
            if (usable.size() >= 2) {
                std::vector<std::vector<double>> chosen;
                for (auto c : usable) {
                    chosen.push_back(groups[c]);
                }
                anova = one_way_anova(chosen);
                if (anova->ms_within > 0.0) {
                    for (const auto& h : tukey_hsd(chosen, c_.stats_alpha)) {
                        verdict[{usable[h.group_a], usable[h.group_b]}] = h.significant ? "sig" : "ns";
                    }
                }
            }
            auto v = [&](std::size_t a, std::size_t b) {
                const auto it = verdict.find({a, b});
                return it == verdict.end() ? std::string("NA") : it->second;
            };
            auto num = [](bool present, double value) { return present ? csv::number(value) : std::string("NA"); };
            write_cells(s, {name, std::to_string(x.size()), num(reg.has_value(), reg ? reg->slope : 0.0),
                            num(reg.has_value(), reg ? reg->intercept : 0.0),
                            num(reg.has_value(), reg ? reg->slope_p : 0.0),
                            num(anova.has_value(), anova ? anova->f : 0.0), num(anova.has_value(), anova ? anova->p : 0.0),
                            anova ? std::to_string(anova->df_between) : "NA",
                            anova ? std::to_string(anova->df_within) : "NA", v(0, 1), v(0, 2), v(1, 2)});
            for (std::size_t c = 0; c < groups.size(); ++c) {
                if (groups[c].empty()) {
                    continue;
                }
                const auto summary = group_summary(groups[c], c_.bootstrap, c_.seed);
                csv::row(g, name, categories[c], groups[c].size(), summary.median, summary.ci_low, summary.ci_high,
                         summary.replicates, summary.seed);
            }
        }
    }

    void terms(StageOutput& out) {
        ensure_labels();
        auto& r = out.open("term_ratios.csv");
        csv::row(r, "event", "scope", "term_a", "term_b", "count_a", "count_b", "ratio");
        for (const auto& e : events_) {
            std::vector<Tweet> dangerous;
            for (const auto& t : e.tweets) {
                if (t.danger_label.value_or(false)) {
                    dangerous.push_back(t);
                }
            }
            for (const auto& [a, b] : c_.term_pairs) {
                const auto all = term_frequency_ratio(e.tweets, a, b);
                const auto dan = term_frequency_ratio(dangerous, a, b);
                csv::row(r, e.label.name(), "all", a, b, all.count_a, all.count_b, all.ratio);
                csv::row(r, e.label.name(), "dangerous", a, b, dan.count_a, dan.count_b, dan.ratio);
            }
        }
        ensure_dab();
        auto& d = out.open("description_terms.csv");
        csv::row(d, "category", "term", "users", "with_term", "fraction");
        std::vector<std::vector<std::vector<std::string>>> tokens(3);
        for (std::size_t i = 0; i < average_.scores.users.size(); ++i) {
            const auto it = users_.find(average_.scores.users[i]);
            if (it == users_.end()) {
                continue;
            }
            tokens[static_cast<std::size_t>(average_.dac.categories[i])].push_back(
                tokenize(normalize_text(it->second.description)));
        }
        const char names[] = {'N', 'M', 'V'};
        for (std::size_t c = 0; c < 3; ++c) {
            for (const auto& term : c_.description_terms) {
                const auto term_norm = normalize_text(term);
                const auto with = static_cast<std::size_t>(
                    std::count_if(tokens[c].begin(), tokens[c].end(),
                                  [&](const std::vector<std::string>& t) { return contains_term(t, term_norm); }));
                const std::string fraction =
                    tokens[c].empty() ? "NA"
                                      : csv::number(static_cast<double>(with) / static_cast<double>(tokens[c].size()));
                csv::row(d, names[c], term_norm, tokens[c].size(), with, fraction);
            }
        }
    }

    void export_gexf(StageOutput& out) {
        ensure_dab();
        for (const auto& e : events_) {
            write_gexf(out.open("graph_" + file_tag(e.label) + ".gexf"), e.graph, e.dab.dac.categories);
            write_dot(out.open("graph_" + file_tag(e.label) + ".dot"), e.graph, e.dab.dac.categories);
        }
    }

    void report(StageOutput& out) {
        ensure_polarity();
        ensure_centrality();
        auto& r = out.open("report.md");
        r << "# Dangerous speech report\n\n";
        r << "Generated by incite " << kVersion << ". Diffusion steps t = " << c_.t << ", classes k = " << c_.k
          << ", expansion threshold tau = " << csv::number(c_.tau) << ".\n\n";

        r << "## Events\n\n| event | tweets | candidates | annotated | kappa | dangerous tweets | users | M+V share |\n"
          << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& e : events_) {
            r << "| " << e.label.name() << " | " << e.tweets.size() << " | " << e.candidates.size() << " | "
              << e.pairs.size() << " | " << (e.kappa ? fmt::format("{:.3f}", e.kappa->kappa) : "NA") << " | "
              << e.counts.dangerous_tweets << " | " << e.graph.node_count() << " | "
              << fmt::format("{:.2f}%", 100.0 * e.dab.dac.dangerous_fraction) << " |\n";
        }

        r << "\n## Category thresholds\n\n| scope | thresholds | N | M | V |\n|---|---|---|---|---|\n";
        auto th_row = [&](const std::string& scope, const DabResult& d) {
            std::size_t n = 0;
            std::size_t m = 0;
            std::size_t v = 0;
            for (auto cat : d.dac.categories) {
                (cat == DangerCategory::N ? n : cat == DangerCategory::M ? m : v) += 1;
            }
            std::string ths;
            for (double t : d.thresholds) {
                ths += (ths.empty() ? "" : ", ") + fmt::format("{:.4f}", t);
            }
            r << "| " << scope << " | " << ths << " | " << n << " | " << m << " | " << v << " |\n";
        };
        for (const auto& e : events_) {
            th_row(e.label.name(), e.dab);
        }
        th_row("average", average_);

        r << "\n## Most amplified users (average score)\n\n| user | score | category |\n|---|---|---|\n";
        std::vector<std::size_t> order(average_.scores.users.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return average_.scores.normalized[a] > average_.scores.normalized[b];
        });
        for (std::size_t i = 0; i < std::min<std::size_t>(10, order.size()); ++i) {
            const auto u = order[i];
            r << "| " << average_.scores.users[u] << " | " << fmt::format("{:.4f}", average_.scores.normalized[u])
              << " | " << to_char(average_.dac.categories[u]) << " |\n";
        }

        std::size_t significant = 0;
        std::size_t defined = 0;
        for (const auto& [user, row] : polarity_) {
            significant += row.follower.significant ? 1 : 0;
            defined += row.retweet ? 1 : 0;
        }
        r << "\n## Polarity\n\n" << polarity_.size() << " users; retweet polarity defined for " << defined
          << "; significant follower polarity for " << significant << ".\n";

        r << "\n## Attribute regressions against average score\n\n| attribute | n | slope | p |\n|---|---|---|---|\n";
        const auto attributes = attribute_table();
        for (const auto& [name, column] : attributes) {
            std::vector<double> x;
            std::vector<double> y;
            for (std::size_t i = 0; i < column.size(); ++i) {
                if (column[i]) {
                    x.push_back(average_.scores.normalized[i]);
                    y.push_back(*column[i]);
                }
            }
            std::string slope = "NA";
            std::string p = "NA";
            if (x.size() >= 3) {
                try {
                    const auto reg = linreg(x, y);
                    slope = fmt::format("{:.4g}", reg.slope);
                    p = fmt::format("{:.3g}", reg.slope_p);
                } catch (const InvalidArgument&) {
                }
            }
            r << "| " << name << " | " << x.size() << " | " << slope << " | " << p << " |\n";
        }
    }

private:
    EventState& event(const EventLabel& label) {
        for (auto& e : events_) {
            if (e.label == label) {
                return e;
            }
        }
        throw InvalidArgument("unknown event " + label.name());
    }

    void report_warnings(const std::vector<std::string>& warnings) {
        for (const auto& w : warnings) {
            warn_ << "warning: " << w << "\n";
        }
    }

    static void write_cells(std::ostream& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << csv::escape(cells[i]);
        }
        out << '\n';
    }

    static void write_ecdf(std::ostream& out, const std::vector<double>& values) {
        csv::row(out, "value", "fraction");
        if (values.empty()) {
            return;
        }
        for (const auto& [v, f] : ecdf(values)) {
            csv::row(out, v, f);
        }
    }

    // Per-user attribute columns aligned with average_.scores.users.
    std::vector<std::pair<std::string, std::vector<std::optional<double>>>> attribute_table() {
        const auto& users = average_.scores.users;
        const auto& merged = centrality_.at(kMerged);
        std::vector<std::pair<std::string, std::vector<std::optional<double>>>> cols{
            {"log_statuses_count", {}}, {"log_followers_count", {}}, {"log_friends_count", {}},
            {"log_favourites_count", {}}, {"retweet_polarity", {}},  {"follower_polarity", {}},
            {"indegree", {}},            {"harmonic_closeness", {}}, {"eigenvector", {}},
        };
        for (auto& [name, col] : cols) {
            col.resize(users.size());
        }
        for (std::size_t i = 0; i < users.size(); ++i) {
            if (const auto it = users_.find(users[i]); it != users_.end()) {
                cols[0].second[i] = log1p_count(it->second.statuses_count);
                cols[1].second[i] = log1p_count(it->second.followers_count);
                cols[2].second[i] = log1p_count(it->second.friends_count);
                cols[3].second[i] = log1p_count(it->second.favourites_count);
            }
            const auto& p = polarity_.at(users[i]);
            cols[4].second[i] = p.retweet;
            cols[5].second[i] = p.follower.score;
            if (const auto v = merged_.index_of(users[i])) {
                cols[6].second[i] = merged.indegree[*v];
                cols[7].second[i] = merged.harmonic[*v];
                cols[8].second[i] = merged.eigenvector.scores[*v];
            }
        }
        return cols;
    }

    const PipelineConfig& c_;
    std::ostream& log_;
    std::ostream& warn_;

    bool corpus_ready_ = false;
    bool events_ready_ = false;
    bool candidates_ready_ = false;
    bool labels_ready_ = false;
    bool graphs_ready_ = false;
    bool dab_ready_ = false;
    bool polarity_ready_ = false;
    bool centrality_ready_ = false;

    std::vector<Tweet> tweets_;
    std::size_t tweets_skipped_ = 0;
    std::map<std::string, UserProfile> users_;
    std::size_t users_skipped_ = 0;
    std::vector<LexiconSet> lexica_;
    std::vector<EventState> events_;
    std::vector<std::optional<EventLabel>> tweet_event_;
    std::size_t single_annotated_ = 0;
    RetweetGraph merged_;
    DabResult average_;
    std::map<std::string, PolarityRow> polarity_;
    std::map<EventLabel, CentralityReport> centrality_;
};

using StageFn = void (Pipeline::*)(StageOutput&);

const std::map<std::string, StageFn>& stage_table() {
    static const std::map<std::string, StageFn> table{
        {"ingest", &Pipeline::ingest},
        {"classify-events", &Pipeline::classify_events},
        {"filter", &Pipeline::filter},
        {"kappa", &Pipeline::kappa},
        {"build-graph", &Pipeline::build_graph},
        {"dab", &Pipeline::dab},
        {"classify", &Pipeline::classify},
        {"polarity", &Pipeline::polarity},
        {"centrality", &Pipeline::centrality},
        {"stats", &Pipeline::stats},
        {"terms", &Pipeline::terms},
        {"export-gexf", &Pipeline::export_gexf},
        {"report", &Pipeline::report},
    };
    return table;
}

} // namespace

void run(std::string_view subcommand, const PipelineConfig& config, std::ostream& log, std::ostream& warn) {
    std::vector<std::string> stages;
    if (subcommand == "all") {
        stages = stage_names();
    } else if (stage_table().count(std::string(subcommand))) {
        stages.emplace_back(subcommand);
    } else {
        throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
    }
    validate(config);
    std::error_code ec;
    fs::create_directories(config.output, ec);
    if (ec || !fs::is_directory(config.output)) {
        throw ConfigError("cannot create output directory " + config.output.string());
    }
    const auto header = manifest_header(config);
    Pipeline pipeline(config, log, warn);
    for (const auto& stage : stages) {
        StageOutput out(config.output, stage);
        (pipeline.*stage_table().at(stage))(out);
        record_stage(config, header, stage, out.commit());
    }
}

} // namespace incite
