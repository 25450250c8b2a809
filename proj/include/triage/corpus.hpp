#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "triage/date.hpp"

namespace triage {

// Four-level priority taxonomy, ordered Low < Medium < High < Critical.
enum class PriorityLevel : int { Low = 0, Medium = 1, High = 2, Critical = 3 };

constexpr int kNumPriorityLevels = 4;

std::string to_string(PriorityLevel level);  // lowercase level name
std::optional<PriorityLevel> parse_priority(std::string_view text);  // case-insensitive

enum class Source { Github, Nvd };
std::string to_string(Source source);
std::optional<Source> parse_source(std::string_view text);

enum class LabelOrigin { None, Auto, Expert };
std::string to_string(LabelOrigin origin);
std::optional<LabelOrigin> parse_label_origin(std::string_view text);

// CVE entry as exported from NVD.
struct CveRecord {
  std::string cve_id;
  Date publication_date;
  std::optional<Date> last_modified_date;
  std::string description;
  std::string severity;
  std::optional<std::string> cvss2_access_complexity;
  std::optional<std::string> cvss2_authentication;
  std::optional<std::string> cvss2_confidentiality;
  std::optional<std::string> cvss3_attack_vector;
  std::optional<std::string> cvss3_attack_complexity;
  std::optional<std::string> cvss3_integrity;
  std::optional<std::string> github_link;
  std::optional<Date> exploit_date;
  std::optional<Date> third_party_advisory_date;
  std::optional<Date> vendor_advisory_date;
  std::optional<Date> patch_date;
};

// CVE-<4 digits>-<4+ digits>
bool valid_cve_id(std::string_view id);

struct CodeReview {
  std::string id;
  Source source = Source::Github;
  std::string summary;
  std::string description;
  std::optional<PriorityLevel> label;
  LabelOrigin label_origin = LabelOrigin::None;
};

// Immutable ordered collection of reviews with unique ids.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<CodeReview> reviews);  // throws on invariant violation

  const std::vector<CodeReview>& reviews() const { return reviews_; }
  std::size_t size() const { return reviews_.size(); }
  std::size_t count_by_source(Source source) const;

 private:
  std::vector<CodeReview> reviews_;
};

enum class CveFormat { Json, Csv };

struct CveIngestResult {
  std::vector<CveRecord> records;
  std::vector<std::string> warnings;
};

// Parses a CVE export (JSON array or CSV with Table-style snake_case
// attribute names). Unparseable dates in optional fields are dropped with a
// warning; missing mandatory fields (cve_id, publication_date, description)
// and malformed containers throw.
CveIngestResult ingest_cve_file(std::string_view content, CveFormat format);

struct GithubIngestResult {
  std::vector<CodeReview> reviews;
  std::vector<std::string> warnings;
};

// Parses a GitHub issue export (JSON array with id/title/body/state).
// Only closed issues become reviews; records without a state are skipped
// with a warning; duplicate ids among ingested reviews throw.
GithubIngestResult ingest_github_export(std::string_view content);

CodeReview cve_to_review(const CveRecord& record);

// Deterministic shuffle split: |train| = floor(train_fraction * |corpus|).
// With stratify_by_label the floor rule applies per label stratum instead.
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double train_fraction,
                                       std::uint64_t seed, bool stratify_by_label = false);

// JSON Lines persistence, one CodeReview object per line.
std::string corpus_to_jsonl(const Corpus& corpus);
Corpus corpus_from_jsonl(std::string_view content);

}  // namespace triage
