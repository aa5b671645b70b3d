#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stocksig/labeler.hpp"
#include "stocksig/vectorizer.hpp"

namespace stocksig {

// Per-feature scores for one ranker. Ranking order is descending score
// with ties broken by ascending feature index.
struct RankerScores {
  std::string ranker;  // "cs" | "fv" | "mi" | "rfe"
  std::vector<double> scores;
};

std::vector<int> ranked_indices(const RankerScores& scores);

// Chi-squared over the 2x2 presence/class contingency table per term
// (weight > 0 counts as present). Cells with expected count 0 contribute
// nothing. Throws DataError when only one class is present.
RankerScores chi2_scores(const DocTermMatrix& m,
                         const std::vector<SignalClass>& labels);

// One-way ANOVA F over the real-valued weights, k = 2 groups. Zero
// between-group variance scores 0; otherwise zero within-group variance
// gets a sentinel one above the largest finite score.
RankerScores f_scores(const DocTermMatrix& m,
                      const std::vector<SignalClass>& labels);

// Mutual information of term presence and class, natural log, empirical
// probabilities, zero-probability cells contribute nothing.
RankerScores mi_scores(const DocTermMatrix& m,
                       const std::vector<SignalClass>& labels);

// Trains on a column subset and returns one non-negative importance per
// column of that subset.
using ImportanceFn = std::function<std::vector<double>(
    const DocTermMatrix&, const std::vector<SignalClass>&)>;

// Recursive feature elimination: each round drops the
// ceil(step_frac x remaining) lowest-importance features (never below
// target_k; equal importances drop the lower index first). A feature's
// score is the round it was eliminated in; survivors score one round
// higher. target_k >= feature count keeps everything in one round.
RankerScores rfe_scores(const ImportanceFn& trainer, const DocTermMatrix& m,
                        const std::vector<SignalClass>& labels, int target_k,
                        double step_frac = 0.1);

struct Selection {
  DocTermMatrix matrix;    // columns in rank order, best first
  std::vector<int> kept;   // original column index per reduced column
};

// Keeps the k best-scoring word columns. k above the column count is
// clamped; k <= 0 throws ConfigError.
Selection top_k(const DocTermMatrix& m, const RankerScores& scores, int k);

// Ranked-word dictionary: "rank,term,score,buy_weight,sell_weight".
// buy_weights/sell_weights align with kept (one per reduced column).
std::string dictionary_csv(const Vocabulary& vocab,
                           const std::vector<int>& kept,
                           const RankerScores& scores,
                           const std::vector<double>& buy_weights,
                           const std::vector<double>& sell_weights);

}  // namespace stocksig
