#pragma once

#include <string>
#include <vector>

namespace toposum {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Lowercase, split on non-alphanumeric bytes.
std::vector<std::string> rouge_tokenize(const std::string& text);

// Clipped n-gram overlap, n in {1, 2}. Throws EmptyAfterTokenization when
// either side has no tokens (or too few for an n-gram).
RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n);

// LCS-based scores; sequences beyond 20000 tokens are rejected
// (TokenLimitExceeded).
RougeScore rouge_l(const std::string& candidate, const std::string& reference);

struct EvalPair {
    std::string id;
    std::string candidate;
    std::string reference;
};

// JSON report with per-pair scores and corpus means for ROUGE-1/2/L.
std::string evaluate_corpus(const std::vector<EvalPair>& pairs);

} // namespace toposum
