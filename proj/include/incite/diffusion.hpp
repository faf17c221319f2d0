#pragma once

#include "incite/annotate.hpp"
#include "incite/graph.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace incite {

struct BeliefVector {
    std::vector<double> values;
    int iteration = 0;
};

/// p' = T p
BeliefVector degroot_step(const TransitionMatrix& t, const BeliefVector& p);

/// Raw and max-normalized Danger Amplification Belief scores, node-aligned
/// with the graph.
struct DabScores {
    std::vector<std::string> users;
    std::vector<double> raw;
    std::vector<double> normalized;
    int iterations = 0;
};

/// Seeds p0(u) = n_DS(u) (0 for users without a count) and runs t DeGroot steps.
DabScores compute_dab(const RetweetGraph& g, const DangerCounts& counts, int iterations = 2);

/// Above this many distinct values the DP runs on blocks of consecutive order
/// statistics, each carrying its mean and size.
inline constexpr std::size_t kJenksThinningThreshold = 5000;
inline constexpr std::size_t kJenksRepresentatives = 2000;

/// Jenks natural breaks: the k-1 class upper bounds (global maximum excluded)
/// of the SSE-optimal partition of the sorted values. Above
/// kJenksThinningThreshold distinct values, cuts are restricted to the
/// boundaries of kJenksRepresentatives equal blocks; a threshold is then the
/// block's last order statistic (one of quantile_representatives).
std::vector<double> jenks_breaks(std::span<const double> values, int k = 3);

/// Same optimization without thinning.
std::vector<double> jenks_breaks_exact(std::span<const double> values, int k = 3);

/// Every ceil(n / count)-th order statistic (1-based positions step, 2*step, ...)
/// plus the maximum.
std::vector<double> quantile_representatives(std::span<const double> values, std::size_t count);

enum class DangerCategory { N, M, V };

char to_char(DangerCategory c);
DangerCategory category_from_char(char c);

struct DacAssignment {
    std::vector<DangerCategory> categories;
    double dangerous_fraction = 0.0;  // share in M or V
};

/// Class index = number of thresholds strictly below the score (ties go to the
/// lower class). The lowest class is N, the highest V, anything between M.
DacAssignment assign_dac(std::span<const double> normalized, std::span<const double> thresholds);

struct DabResult {
    DabScores scores;
    std::vector<double> thresholds;
    DacAssignment dac;
};

DabResult classify_dab(DabScores scores, int k = 3);

using ScoreMap = std::map<std::string, double>;

/// Per-user mean over the events the user appears in.
ScoreMap average_dab(std::span<const ScoreMap> per_event);

/// Right-continuous empirical CDF: (distinct value, fraction <= value), ascending.
std::vector<std::pair<double, double>> ecdf(std::span<const double> values);

} // namespace incite
