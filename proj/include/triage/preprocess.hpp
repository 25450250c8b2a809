#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "triage/corpus.hpp"

namespace triage {

struct TokenizedReview {
  std::string review_id;
  std::vector<std::string> tokens;  // lowercase stemmed tokens
  std::size_t original_token_count = 0;  // cleaned token count before stopword removal
};

using Stoplist = std::unordered_set<std::string>;

// Strips code blocks, URLs and hex runs, lowercases, replaces punctuation
// and special characters with spaces and collapses whitespace. Idempotent.
std::string clean_text(std::string_view raw);

// Whitespace split of already-cleaned text.
std::vector<std::string> tokenize(std::string_view cleaned);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const Stoplist& stoplist);

// clean -> tokenize -> remove stopwords -> stem over summary + " " +
// description. Returns nullopt for reviews whose cleaned text has fewer
// than 5 tokens (noise filter) or whose stemmed token list comes out empty.
std::optional<TokenizedReview> preprocess_review(const CodeReview& review,
                                                 const Stoplist& stoplist);

// Applies preprocess_review across a corpus (order-preserving; parallel).
std::vector<TokenizedReview> preprocess_corpus(const Corpus& corpus, const Stoplist& stoplist);

// One token per line, '#' comments and blank lines ignored.
Stoplist parse_stoplist(std::string_view content);

std::string tokenized_to_jsonl(std::span<const TokenizedReview> reviews);
std::vector<TokenizedReview> tokenized_from_jsonl(std::string_view content);

}  // namespace triage
