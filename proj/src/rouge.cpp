#include "toposum/rouge.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"

namespace toposum {

namespace {

constexpr std::size_t k_lcs_token_cap = 20000;

RougeScore from_counts(double overlap, double n_candidate, double n_reference) {
    RougeScore s;
    s.precision = n_candidate > 0.0 ? overlap / n_candidate : 0.0;
    s.recall = n_reference > 0.0 ? overlap / n_reference : 0.0;
    s.f1 = (s.precision + s.recall) > 0.0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    return s;
}

std::map<std::vector<std::string>, std::size_t> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
    std::map<std::vector<std::string>, std::size_t> counts;
    if (tokens.size() < static_cast<std::size_t>(n)) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
        ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                          tokens.begin() +
                                              static_cast<std::ptrdiff_t>(i + n))];
    return counts;
}

} // namespace

std::vector<std::string> rouge_tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n) {
    const auto cand = ngram_counts(rouge_tokenize(candidate), n);
    const auto ref = ngram_counts(rouge_tokenize(reference), n);
    if (cand.empty() || ref.empty())
        throw EmptyAfterTokenization("rouge-" + std::to_string(n) +
                                     " over a side with no " + std::to_string(n) +
                                     "-grams");
    double overlap = 0.0, n_cand = 0.0, n_ref = 0.0;
    for (const auto& [gram, count] : cand) {
        n_cand += static_cast<double>(count);
        auto it = ref.find(gram);
        if (it != ref.end())
            overlap += static_cast<double>(std::min(count, it->second));
    }
    for (const auto& [gram, count] : ref) n_ref += static_cast<double>(count);
    return from_counts(overlap, n_cand, n_ref);
}

RougeScore rouge_l(const std::string& candidate, const std::string& reference) {
    const auto cand = rouge_tokenize(candidate);
    const auto ref = rouge_tokenize(reference);
    if (cand.empty() || ref.empty())
        throw EmptyAfterTokenization("longest-common-subsequence over an empty side");
    if (cand.size() > k_lcs_token_cap || ref.size() > k_lcs_token_cap)
        throw TokenLimitExceeded(
            "longest-common-subsequence limited to " + std::to_string(k_lcs_token_cap) +
            " tokens, got " + std::to_string(std::max(cand.size(), ref.size())));

    // Rolling-row LCS length.
    std::vector<std::uint32_t> prev(ref.size() + 1, 0), cur(ref.size() + 1, 0);
    for (std::size_t i = 1; i <= cand.size(); ++i) {
        for (std::size_t j = 1; j <= ref.size(); ++j) {
            if (cand[i - 1] == ref[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    const double lcs = static_cast<double>(prev[ref.size()]);
    return from_counts(lcs, static_cast<double>(cand.size()),
                       static_cast<double>(ref.size()));
}

std::string evaluate_corpus(const std::vector<EvalPair>& pairs) {
    nlohmann::json report;
    auto per_pair = nlohmann::json::array();
    RougeScore sum1, sum2, suml;
    auto score_json = [](const RougeScore& s) {
        return nlohmann::json{
            {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
    };
    for (const auto& pair : pairs) {
        const auto r1 = rouge_n(pair.candidate, pair.reference, 1);
        const auto r2 = rouge_n(pair.candidate, pair.reference, 2);
        const auto rl = rouge_l(pair.candidate, pair.reference);
        per_pair.push_back({{"id", pair.id},
                            {"rouge1", score_json(r1)},
                            {"rouge2", score_json(r2)},
                            {"rougeL", score_json(rl)}});
        sum1.precision += r1.precision;
        sum1.recall += r1.recall;
        sum1.f1 += r1.f1;
        sum2.precision += r2.precision;
        sum2.recall += r2.recall;
        sum2.f1 += r2.f1;
        suml.precision += rl.precision;
        suml.recall += rl.recall;
        suml.f1 += rl.f1;
    }
    const double n = pairs.empty() ? 1.0 : static_cast<double>(pairs.size());
    auto mean_json = [n](const RougeScore& s) {
        return nlohmann::json{{"precision", s.precision / n},
                              {"recall", s.recall / n},
                              {"f1", s.f1 / n}};
    };
    report["per_pair"] = std::move(per_pair);
    report["means"] = {{"rouge1", mean_json(sum1)},
                       {"rouge2", mean_json(sum2)},
                       {"rougeL", mean_json(suml)}};
    return report.dump(2);
}

} // namespace toposum
