#include "triage/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace triage {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string to_string(PriorityLevel level) {
  switch (level) {
    case PriorityLevel::Low: return "low";
    case PriorityLevel::Medium: return "medium";
    case PriorityLevel::High: return "high";
    case PriorityLevel::Critical: return "critical";
  }
  throw std::logic_error("invalid PriorityLevel");
}

std::optional<PriorityLevel> parse_priority(std::string_view text) {
  std::string t = lowercase(text);
  if (t == "low") return PriorityLevel::Low;
  if (t == "medium") return PriorityLevel::Medium;
  if (t == "high") return PriorityLevel::High;
  if (t == "critical") return PriorityLevel::Critical;
  return std::nullopt;
}

std::string to_string(Source source) {
  return source == Source::Github ? "github" : "nvd";
}

std::optional<Source> parse_source(std::string_view text) {
  std::string t = lowercase(text);
  if (t == "github") return Source::Github;
  if (t == "nvd") return Source::Nvd;
  return std::nullopt;
}

std::string to_string(LabelOrigin origin) {
  switch (origin) {
    case LabelOrigin::None: return "none";
    case LabelOrigin::Auto: return "auto";
    case LabelOrigin::Expert: return "expert";
  }
  throw std::logic_error("invalid LabelOrigin");
}

std::optional<LabelOrigin> parse_label_origin(std::string_view text) {
  std::string t = lowercase(text);
  if (t == "none") return LabelOrigin::None;
  if (t == "auto") return LabelOrigin::Auto;
  if (t == "expert") return LabelOrigin::Expert;
  return std::nullopt;
}

bool valid_cve_id(std::string_view id) {
  // CVE-<4 digits>-<4+ digits>
  if (id.size() < 13 || id.substr(0, 4) != "CVE-") return false;
  for (int i = 4; i < 8; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  }
  if (id[8] != '-') return false;
  for (std::size_t i = 9; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  }
  return true;
}

Corpus::Corpus(std::vector<CodeReview> reviews) : reviews_(std::move(reviews)) {
  std::unordered_set<std::string_view> ids;
  for (const auto& review : reviews_) {
    if (!ids.insert(review.id).second) {
      throw std::runtime_error("corpus: duplicate review id '" + review.id + "'");
    }
    if (review.label.has_value() != (review.label_origin != LabelOrigin::None)) {
      throw std::runtime_error("corpus: review '" + review.id +
                               "' violates label/label_origin invariant");
    }
  }
}

std::size_t Corpus::count_by_source(Source source) const {
  return static_cast<std::size_t>(
      std::count_if(reviews_.begin(), reviews_.end(),
                    [source](const CodeReview& r) { return r.source == source; }));
}

namespace {

// ---- CVE ingestion -------------------------------------------------------

constexpr const char* kCveFields[] = {
    "cve_id", "publication_date", "last_modified_date", "description",
    "severity", "cvss2_access_complexity", "cvss2_authentication",
    "cvss2_confidentiality", "cvss3_attack_vector", "cvss3_attack_complexity",
    "cvss3_integrity", "github_link", "exploit_date",
    "third_party_advisory_date", "vendor_advisory_date", "patch_date"};

// A raw record: field name -> string value ("" means absent).
using RawRecord = std::map<std::string, std::string>;

std::optional<Date> optional_date(const RawRecord& raw, const std::string& field,
                                  std::size_t index, std::vector<std::string>& warnings) {
  auto it = raw.find(field);
  if (it == raw.end() || it->second.empty()) return std::nullopt;
  auto date = Date::parse(it->second);
  if (!date) {
    std::ostringstream msg;
    msg << "cve record " << index << ": unparseable " << field << " '" << it->second
        << "' treated as absent";
    warnings.push_back(msg.str());
  }
  return date;
}

std::optional<std::string> optional_string(const RawRecord& raw, const std::string& field) {
  auto it = raw.find(field);
  if (it == raw.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::string mandatory(const RawRecord& raw, const std::string& field, std::size_t index) {
  auto it = raw.find(field);
  if (it == raw.end() || it->second.empty()) {
    std::ostringstream msg;
    msg << "cve record " << index << ": missing mandatory field '" << field << "'";
    throw std::runtime_error(msg.str());
  }
  return it->second;
}

CveRecord record_from_raw(const RawRecord& raw, std::size_t index,
                          std::vector<std::string>& warnings) {
  CveRecord rec;
  rec.cve_id = mandatory(raw, "cve_id", index);
  if (!valid_cve_id(rec.cve_id)) {
    std::ostringstream msg;
    msg << "cve record " << index << ": invalid cve_id '" << rec.cve_id << "'";
    throw std::runtime_error(msg.str());
  }
  std::string pub = mandatory(raw, "publication_date", index);
  auto pub_date = Date::parse(pub);
  if (!pub_date) {
    std::ostringstream msg;
    msg << "cve record " << index << ": unparseable publication_date '" << pub << "'";
    throw std::runtime_error(msg.str());
  }
  rec.publication_date = *pub_date;
  rec.description = mandatory(raw, "description", index);

  rec.last_modified_date = optional_date(raw, "last_modified_date", index, warnings);
  if (auto sev = optional_string(raw, "severity")) rec.severity = *sev;
  rec.cvss2_access_complexity = optional_string(raw, "cvss2_access_complexity");
  rec.cvss2_authentication = optional_string(raw, "cvss2_authentication");
  rec.cvss2_confidentiality = optional_string(raw, "cvss2_confidentiality");
  rec.cvss3_attack_vector = optional_string(raw, "cvss3_attack_vector");
  rec.cvss3_attack_complexity = optional_string(raw, "cvss3_attack_complexity");
  rec.cvss3_integrity = optional_string(raw, "cvss3_integrity");
  rec.github_link = optional_string(raw, "github_link");
  rec.exploit_date = optional_date(raw, "exploit_date", index, warnings);
  rec.third_party_advisory_date = optional_date(raw, "third_party_advisory_date", index, warnings);
  rec.vendor_advisory_date = optional_date(raw, "vendor_advisory_date", index, warnings);
  rec.patch_date = optional_date(raw, "patch_date", index, warnings);
  return rec;
}

std::string json_field_to_string(const json& value) {
  if (value.is_null()) return "";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  return value.dump();
}

std::vector<RawRecord> raw_records_from_json(std::string_view content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("cve file: malformed json: ") + e.what());
  }
  if (!doc.is_array()) {
    throw std::runtime_error("cve file: expected a json array of records");
  }
  std::vector<RawRecord> raws;
  raws.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_object()) {
      std::ostringstream msg;
      msg << "cve record " << i << ": expected a json object";
      throw std::runtime_error(msg.str());
    }
    RawRecord raw;
    for (const auto& [key, value] : doc[i].items()) {
      raw[key] = json_field_to_string(value);
    }
    raws.push_back(std::move(raw));
  }
  return raws;
}

// Minimal RFC-4180 CSV reader: quoted fields, doubled quotes, embedded
// newlines inside quotes.
std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  for (std::size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || !field.empty()) {
          row.push_back(std::move(field));
          field.clear();
          rows.push_back(std::move(row));
          row.clear();
          row_started = false;
        }
        break;
      default:
        field.push_back(c);
        row_started = true;
        break;
    }
  }
  if (in_quotes) throw std::runtime_error("csv: unterminated quoted field");
  if (row_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RawRecord> raw_records_from_csv(std::string_view content) {
  auto rows = parse_csv(content);
  if (rows.empty()) return {};
  const auto& header = rows[0];
  std::vector<RawRecord> raws;
  raws.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      std::ostringstream msg;
      msg << "cve record " << (r - 1) << ": malformed row: expected " << header.size()
          << " fields, got " << rows[r].size();
      throw std::runtime_error(msg.str());
    }
    RawRecord raw;
    for (std::size_t c = 0; c < header.size(); ++c) {
      raw[header[c]] = rows[r][c];
    }
    raws.push_back(std::move(raw));
  }
  return raws;
}

}  // namespace

CveIngestResult ingest_cve_file(std::string_view content, CveFormat format) {
  std::vector<RawRecord> raws = format == CveFormat::Json ? raw_records_from_json(content)
                                                          : raw_records_from_csv(content);
  CveIngestResult result;
  result.records.reserve(raws.size());
  for (std::size_t i = 0; i < raws.size(); ++i) {
    result.records.push_back(record_from_raw(raws[i], i, result.warnings));
  }
  return result;
}

GithubIngestResult ingest_github_export(std::string_view content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("github export: malformed json: ") + e.what());
  }
  if (!doc.is_array()) {
    throw std::runtime_error("github export: expected a json array of issues");
  }
  GithubIngestResult result;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& issue = doc[i];
    if (!issue.is_object()) {
      std::ostringstream msg;
      msg << "github record " << i << ": expected a json object";
      throw std::runtime_error(msg.str());
    }
    if (!issue.contains("state") || issue["state"].is_null()) {
      std::ostringstream msg;
      msg << "github record " << i << ": missing state field, record skipped";
      result.warnings.push_back(msg.str());
      continue;
    }
    if (lowercase(json_field_to_string(issue["state"])) != "closed") continue;

    CodeReview review;
    review.source = Source::Github;
    review.id = issue.contains("id") ? json_field_to_string(issue["id"]) : "";
    if (review.id.empty()) {
      std::ostringstream msg;
      msg << "github record " << i << ": missing id";
      throw std::runtime_error(msg.str());
    }
    if (!seen.insert(review.id).second) {
      throw std::runtime_error("github export: duplicate id '" + review.id + "'");
    }
    if (issue.contains("title")) review.summary = json_field_to_string(issue["title"]);
    if (issue.contains("body")) review.description = json_field_to_string(issue["body"]);
    result.reviews.push_back(std::move(review));
  }
  return result;
}

CodeReview cve_to_review(const CveRecord& record) {
  if (record.description.empty()) {
    throw std::runtime_error("cve_to_review: record '" + record.cve_id +
                             "' has an empty description");
  }
  CodeReview review;
  review.id = record.cve_id;
  review.source = Source::Nvd;
  review.description = record.description;
  // Summary = first sentence: up to the first terminator followed by whitespace.
  const std::string& text = record.description;
  std::size_t cut = std::string::npos;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    char c = text[i];
    if ((c == '.' || c == '!' || c == '?') &&
        std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      cut = i + 1;
      break;
    }
  }
  review.summary = cut == std::string::npos ? text : text.substr(0, cut);
  return review;
}

namespace {

// Platform-stable Fisher-Yates (std::shuffle sequences are
// implementation-defined).
void deterministic_shuffle(std::vector<std::size_t>& indices, std::mt19937_64& gen) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(gen() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

std::vector<std::size_t> pick_train_indices(const std::vector<std::size_t>& pool,
                                            double fraction, std::mt19937_64& gen) {
  std::vector<std::size_t> shuffled = pool;
  deterministic_shuffle(shuffled, gen);
  auto train_count = static_cast<std::size_t>(fraction * static_cast<double>(pool.size()));
  shuffled.resize(train_count);
  return shuffled;
}

}  // namespace

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double train_fraction,
                                       std::uint64_t seed, bool stratify_by_label) {
  if (corpus.size() == 0) throw std::runtime_error("split_corpus: empty corpus");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::runtime_error("split_corpus: train_fraction must be in (0,1)");
  }
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> train_indices;
  if (!stratify_by_label) {
    std::vector<std::size_t> pool(corpus.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    train_indices = pick_train_indices(pool, train_fraction, gen);
  } else {
    // Strata in a fixed order: Low..Critical, then unlabeled.
    std::map<int, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& label = corpus.reviews()[i].label;
      strata[label ? static_cast<int>(*label) : kNumPriorityLevels].push_back(i);
    }
    for (auto& [_, pool] : strata) {
      auto picked = pick_train_indices(pool, train_fraction, gen);
      train_indices.insert(train_indices.end(), picked.begin(), picked.end());
    }
  }
  std::vector<bool> in_train(corpus.size(), false);
  for (std::size_t i : train_indices) in_train[i] = true;

  std::vector<CodeReview> train, test;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (in_train[i] ? train : test).push_back(corpus.reviews()[i]);
  }
  return {Corpus(std::move(train)), Corpus(std::move(test))};
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& review : corpus.reviews()) {
    ordered_json obj;
    obj["id"] = review.id;
    obj["source"] = to_string(review.source);
    obj["summary"] = review.summary;
    obj["description"] = review.description;
    if (review.label) obj["label"] = to_string(*review.label);
    obj["label_origin"] = to_string(review.label_origin);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

Corpus corpus_from_jsonl(std::string_view content) {
  std::vector<CodeReview> reviews;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      std::ostringstream msg;
      msg << "corpus line " << line_no << ": malformed json: " << e.what();
      throw std::runtime_error(msg.str());
    }
    CodeReview review;
    review.id = obj.at("id").get<std::string>();
    auto source = parse_source(obj.at("source").get<std::string>());
    if (!source) {
      std::ostringstream msg;
      msg << "corpus line " << line_no << ": unknown source";
      throw std::runtime_error(msg.str());
    }
    review.source = *source;
    review.summary = obj.value("summary", "");
    review.description = obj.value("description", "");
    if (obj.contains("label") && !obj["label"].is_null()) {
      auto label = parse_priority(obj["label"].get<std::string>());
      if (!label) {
        std::ostringstream msg;
        msg << "corpus line " << line_no << ": unknown label '"
            << obj["label"].get<std::string>() << "'";
        throw std::runtime_error(msg.str());
      }
      review.label = label;
    }
    if (obj.contains("label_origin")) {
      auto origin = parse_label_origin(obj["label_origin"].get<std::string>());
      if (!origin) {
        std::ostringstream msg;
        msg << "corpus line " << line_no << ": unknown label_origin";
        throw std::runtime_error(msg.str());
      }
      review.label_origin = *origin;
    } else {
      review.label_origin = review.label ? LabelOrigin::Expert : LabelOrigin::None;
    }
    reviews.push_back(std::move(review));
  }
  return Corpus(std::move(reviews));
}

}  // namespace triage
