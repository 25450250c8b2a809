#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triage/corpus.hpp"
#include "triage/preprocess.hpp"

namespace triage {

struct CatalogEntry {
  std::string name;
  std::vector<std::string> alias_terms;
  std::vector<std::string> impact_terms;
};

struct VulnerabilityCatalog {
  std::vector<CatalogEntry> entries;
};

VulnerabilityCatalog catalog_from_json(std::string_view content);

// Runs every catalog term through the cleaning/stemming pipeline so its
// tokens line up with a preprocessed corpus.
VulnerabilityCatalog preprocess_catalog(const VulnerabilityCatalog& catalog,
                                        const Stoplist& stoplist);

struct RankedTerm {
  std::string term;
  double tf_sum = 0.0;           // corpus-summed TF-IDF mass
  std::size_t doc_frequency = 0;
  std::size_t rank = 0;          // 1-based, contiguous
};

struct LexiconEntry {
  std::string term;
  PriorityLevel priority = PriorityLevel::Low;
  double weight = 0.0;
  std::size_t rank = 0;
};

struct Lexicon {
  std::vector<LexiconEntry> entries;
  std::size_t size_bound = 250;
  std::string version;
};

std::size_t term_frequency(std::string_view term, const TokenizedReview& review);

// log((|C|+1) / (|C_T|+1)), natural log; >= 0 and finite by smoothing.
double inverse_document_frequency(std::string_view term,
                                  std::span<const TokenizedReview> corpus);

double tf_idf(std::string_view term, const TokenizedReview& review,
              std::span<const TokenizedReview> corpus);

// Numerically identical to term_frequency.
std::size_t bag_of_words(std::string_view term, const TokenizedReview& review);

// Candidate terms = corpus vocabulary plus catalog terms; scored by TF-IDF
// summed over all reviews, sorted descending (lexicographic tie-break),
// truncated to top_k with contiguous ranks.
std::vector<RankedTerm> build_ranked_terms(const VulnerabilityCatalog& catalog,
                                           std::span<const TokenizedReview> corpus,
                                           std::size_t top_k);

using PriorityMapping = std::map<std::string, PriorityLevel>;

// Every ranked term must be mapped; unmapped terms raise an error listing
// all of them so the mapping file can be completed.
Lexicon assign_priorities(std::span<const RankedTerm> ranked, const PriorityMapping& mapping);

// Maximum priority among matching lexicon terms; nullopt when none match.
std::optional<PriorityLevel> auto_label(const TokenizedReview& review, const Lexicon& lexicon);

// CSV with header term,priority,weight,rank.
std::string lexicon_to_csv(const Lexicon& lexicon);
Lexicon lexicon_from_csv(std::string_view content);

// CSV with header term,priority.
PriorityMapping mapping_from_csv(std::string_view content);

}  // namespace triage
