#include "triage/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "triage/porter.hpp"

namespace triage {

namespace {

using nlohmann::json;

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> preprocess_terms(const std::vector<std::string>& terms,
                                          const Stoplist& stoplist) {
  std::vector<std::string> out;
  for (const auto& term : terms) {
    for (const auto& token : remove_stopwords(tokenize(clean_text(term)), stoplist)) {
      out.push_back(porter_stem(token));
    }
  }
  return out;
}

}  // namespace

VulnerabilityCatalog catalog_from_json(std::string_view content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("catalog: malformed json: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("catalog: expected a json array");
  VulnerabilityCatalog catalog;
  std::set<std::string> names;
  for (const auto& item : doc) {
    CatalogEntry entry;
    entry.name = item.at("name").get<std::string>();
    if (!names.insert(entry.name).second) {
      throw std::runtime_error("catalog: duplicate entry name '" + entry.name + "'");
    }
    if (item.contains("alias_terms")) {
      for (const auto& term : item["alias_terms"]) {
        entry.alias_terms.push_back(lowercase(term.get<std::string>()));
      }
    }
    if (item.contains("impact_terms")) {
      for (const auto& term : item["impact_terms"]) {
        entry.impact_terms.push_back(lowercase(term.get<std::string>()));
      }
    }
    catalog.entries.push_back(std::move(entry));
  }
  return catalog;
}

VulnerabilityCatalog preprocess_catalog(const VulnerabilityCatalog& catalog,
                                        const Stoplist& stoplist) {
  VulnerabilityCatalog out;
  out.entries.reserve(catalog.entries.size());
  for (const auto& entry : catalog.entries) {
    CatalogEntry processed;
    processed.name = entry.name;
    processed.alias_terms = preprocess_terms(entry.alias_terms, stoplist);
    processed.impact_terms = preprocess_terms(entry.impact_terms, stoplist);
    out.entries.push_back(std::move(processed));
  }
  return out;
}

std::size_t term_frequency(std::string_view term, const TokenizedReview& review) {
  return static_cast<std::size_t>(
      std::count(review.tokens.begin(), review.tokens.end(), term));
}

double inverse_document_frequency(std::string_view term,
                                  std::span<const TokenizedReview> corpus) {
  if (corpus.empty()) {
    throw std::runtime_error("inverse_document_frequency: empty corpus");
  }
  std::size_t containing = 0;
  for (const auto& review : corpus) {
    if (std::find(review.tokens.begin(), review.tokens.end(), term) != review.tokens.end()) {
      ++containing;
    }
  }
  return std::log(static_cast<double>(corpus.size() + 1) /
                  static_cast<double>(containing + 1));
}

double tf_idf(std::string_view term, const TokenizedReview& review,
              std::span<const TokenizedReview> corpus) {
  return static_cast<double>(term_frequency(term, review)) *
         inverse_document_frequency(term, corpus);
}

std::size_t bag_of_words(std::string_view term, const TokenizedReview& review) {
  std::size_t count = 0;
  for (const auto& token : review.tokens) {
    if (token == term) ++count;
  }
  return count;
}

std::vector<RankedTerm> build_ranked_terms(const VulnerabilityCatalog& catalog,
                                           std::span<const TokenizedReview> corpus,
                                           std::size_t top_k) {
  if (top_k == 0) throw std::runtime_error("build_ranked_terms: top_k must be positive");
  if (corpus.empty()) throw std::runtime_error("build_ranked_terms: empty corpus");

  struct TermStats {
    std::size_t total_count = 0;
    std::size_t doc_frequency = 0;
  };
  std::unordered_map<std::string, TermStats> stats;
  for (const auto& review : corpus) {
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const auto& token : review.tokens) ++counts[token];
    for (const auto& [token, count] : counts) {
      auto& entry = stats[std::string(token)];
      entry.total_count += count;
      entry.doc_frequency += 1;
    }
  }
  for (const auto& entry : catalog.entries) {
    for (const auto* terms : {&entry.alias_terms, &entry.impact_terms}) {
      for (const auto& term : *terms) stats.try_emplace(term);
    }
  }

  const auto corpus_size = static_cast<double>(corpus.size());
  std::vector<RankedTerm> ranked;
  ranked.reserve(stats.size());
  for (const auto& [term, s] : stats) {
    RankedTerm rt;
    rt.term = term;
    rt.doc_frequency = s.doc_frequency;
    // Summed TF-IDF over all reviews: idf is constant per term, so the sum
    // collapses to total_count * idf.
    double idf = std::log((corpus_size + 1.0) / (static_cast<double>(s.doc_frequency) + 1.0));
    rt.tf_sum = static_cast<double>(s.total_count) * idf;
    ranked.push_back(std::move(rt));
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedTerm& a, const RankedTerm& b) {
    if (a.tf_sum != b.tf_sum) return a.tf_sum > b.tf_sum;
    return a.term < b.term;
  });
  if (ranked.size() > top_k) ranked.resize(top_k);
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

Lexicon assign_priorities(std::span<const RankedTerm> ranked, const PriorityMapping& mapping) {
  std::vector<std::string> unmapped;
  for (const auto& rt : ranked) {
    if (!mapping.contains(rt.term)) unmapped.push_back(rt.term);
  }
  if (!unmapped.empty()) {
    std::ostringstream msg;
    msg << "assign_priorities: " << unmapped.size() << " unmapped term(s):";
    for (const auto& term : unmapped) msg << ' ' << term;
    throw std::runtime_error(msg.str());
  }
  Lexicon lexicon;
  lexicon.size_bound = ranked.size();
  lexicon.version = "1";
  lexicon.entries.reserve(ranked.size());
  for (const auto& rt : ranked) {
    lexicon.entries.push_back({rt.term, mapping.at(rt.term), rt.tf_sum, rt.rank});
  }
  return lexicon;
}

std::optional<PriorityLevel> auto_label(const TokenizedReview& review, const Lexicon& lexicon) {
  if (lexicon.entries.empty()) throw std::runtime_error("auto_label: empty lexicon");
  std::unordered_map<std::string_view, PriorityLevel> by_term;
  by_term.reserve(lexicon.entries.size());
  for (const auto& entry : lexicon.entries) by_term.emplace(entry.term, entry.priority);

  std::optional<PriorityLevel> best;
  for (const auto& token : review.tokens) {
    auto it = by_term.find(token);
    if (it == by_term.end()) continue;
    if (!best || static_cast<int>(it->second) > static_cast<int>(*best)) best = it->second;
  }
  return best;
}

namespace {

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

std::vector<std::string> split_line(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      fields.emplace_back(line.substr(pos));
      break;
    }
    fields.emplace_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
    fields.back().pop_back();
  }
  return fields;
}

std::vector<std::vector<std::string>> csv_rows(std::string_view content,
                                               std::string_view expected_header,
                                               std::string_view what) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line == "\r") continue;
    auto fields = split_line(line, ',');
    if (!saw_header) {
      std::string header;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) header += ',';
        header += fields[i];
      }
      if (header != expected_header) {
        throw std::runtime_error(std::string(what) + ": expected header '" +
                                 std::string(expected_header) + "', got '" + header + "'");
      }
      saw_header = true;
      continue;
    }
    rows.push_back(std::move(fields));
  }
  if (!saw_header) {
    throw std::runtime_error(std::string(what) + ": missing header line");
  }
  return rows;
}

}  // namespace

std::string lexicon_to_csv(const Lexicon& lexicon) {
  std::string out = "term,priority,weight,rank\n";
  for (const auto& entry : lexicon.entries) {
    out += entry.term;
    out += ',';
    out += to_string(entry.priority);
    out += ',';
    out += format_weight(entry.weight);
    out += ',';
    out += std::to_string(entry.rank);
    out += '\n';
  }
  return out;
}

Lexicon lexicon_from_csv(std::string_view content) {
  Lexicon lexicon;
  std::set<std::string> seen;
  for (const auto& row : csv_rows(content, "term,priority,weight,rank", "lexicon csv")) {
    if (row.size() != 4) throw std::runtime_error("lexicon csv: malformed row");
    LexiconEntry entry;
    entry.term = row[0];
    if (!seen.insert(entry.term).second) {
      throw std::runtime_error("lexicon csv: duplicate term '" + entry.term + "'");
    }
    auto priority = parse_priority(row[1]);
    if (!priority) {
      throw std::runtime_error("lexicon csv: unknown priority '" + row[1] + "'");
    }
    entry.priority = *priority;
    entry.weight = std::stod(row[2]);
    entry.rank = static_cast<std::size_t>(std::stoull(row[3]));
    lexicon.entries.push_back(std::move(entry));
  }
  lexicon.size_bound = lexicon.entries.size();
  lexicon.version = "1";
  return lexicon;
}

PriorityMapping mapping_from_csv(std::string_view content) {
  PriorityMapping mapping;
  for (const auto& row : csv_rows(content, "term,priority", "priority mapping csv")) {
    if (row.size() != 2) throw std::runtime_error("priority mapping csv: malformed row");
    auto priority = parse_priority(row[1]);
    if (!priority) {
      throw std::runtime_error("priority mapping csv: unknown priority '" + row[1] + "'");
    }
    mapping[row[0]] = *priority;
  }
  return mapping;
}

}  // namespace triage
