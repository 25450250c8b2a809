#include "triage/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "triage/porter.hpp"

namespace triage {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool is_hex_digit(char c) {
  return std::isxdigit(static_cast<unsigned char>(c)) != 0;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Fenced ``` ... ``` blocks; an unterminated fence swallows the rest.
std::string strip_fenced_blocks(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t open = text.find("```", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    std::size_t close = text.find("```", open + 3);
    if (close == std::string_view::npos) break;
    out.push_back(' ');
    pos = close + 3;
  }
  return out;
}

bool contains_token(std::string_view line, std::string_view word) {
  std::size_t pos = 0;
  while ((pos = line.find(word, pos)) != std::string_view::npos) {
    bool left_ok = pos == 0 || !is_word_char(line[pos - 1]);
    std::size_t end = pos + word.size();
    bool right_ok = end == line.size() || !is_word_char(line[end]);
    if (left_ok && right_ok) return true;
    pos = end;
  }
  return false;
}

bool looks_like_code_line(std::string_view line) {
  if (line.size() >= 4 && line.substr(0, 4) == "    " &&
      line.find_first_not_of(" \t") != std::string_view::npos) {
    return true;
  }
  std::string lower(line);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower.find("msg.sender") != std::string::npos) return true;
  for (std::string_view kw : {"function", "pragma", "mapping"}) {
    if (contains_token(lower, kw)) return true;
  }
  return false;
}

std::string drop_code_lines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!looks_like_code_line(line)) {
      out.append(line);
      out.push_back('\n');
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

void blank_urls(std::string& text) {
  for (std::string_view scheme : {"http://", "https://", "www."}) {
    std::size_t pos = 0;
    while ((pos = text.find(scheme, pos)) != std::string::npos) {
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      std::fill(text.begin() + static_cast<std::ptrdiff_t>(pos),
                text.begin() + static_cast<std::ptrdiff_t>(end), ' ');
    }
  }
}

void blank_hex_runs(std::string& text) {
  std::size_t pos = 0;
  while ((pos = text.find("0x", pos)) != std::string::npos) {
    std::size_t end = pos + 2;
    while (end < text.size() && is_hex_digit(text[end])) ++end;
    if (end - pos - 2 >= 8) {
      std::fill(text.begin() + static_cast<std::ptrdiff_t>(pos),
                text.begin() + static_cast<std::ptrdiff_t>(end), ' ');
    }
    pos = end;
  }
}

}  // namespace

std::string clean_text(std::string_view raw) {
  std::string text = strip_fenced_blocks(raw);
  text = drop_code_lines(text);
  blank_urls(text);
  blank_hex_runs(text);

  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (is_word_char(c)) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!out.empty() && out.back() != ' ') {
      out.push_back(' ');
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    while (pos < cleaned.size() && std::isspace(static_cast<unsigned char>(cleaned[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < cleaned.size() && !std::isspace(static_cast<unsigned char>(cleaned[pos]))) ++pos;
    if (pos > start) tokens.emplace_back(cleaned.substr(start, pos - start));
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const Stoplist& stoplist) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (!stoplist.contains(token)) kept.push_back(token);
  }
  return kept;
}

std::optional<TokenizedReview> preprocess_review(const CodeReview& review,
                                                 const Stoplist& stoplist) {
  std::string text = review.summary;
  if (!text.empty() && !review.description.empty()) text += ' ';
  text += review.description;

  std::vector<std::string> tokens = tokenize(clean_text(text));
  if (tokens.size() < 5) return std::nullopt;

  TokenizedReview out;
  out.review_id = review.id;
  out.original_token_count = tokens.size();
  for (auto& token : remove_stopwords(tokens, stoplist)) {
    out.tokens.push_back(porter_stem(token));
  }
  if (out.tokens.empty()) return std::nullopt;
  return out;
}

std::vector<TokenizedReview> preprocess_corpus(const Corpus& corpus, const Stoplist& stoplist) {
  const auto& reviews = corpus.reviews();
  std::vector<std::optional<TokenizedReview>> slots(reviews.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    slots[i] = preprocess_review(reviews[i], stoplist);
  }
  std::vector<TokenizedReview> out;
  out.reserve(reviews.size());
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  return out;
}

Stoplist parse_stoplist(std::string_view content) {
  Stoplist stoplist;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
    }
    if (!line.empty()) stoplist.emplace(line);
    if (end == content.size()) break;
    pos = end + 1;
  }
  return stoplist;
}

std::string tokenized_to_jsonl(std::span<const TokenizedReview> reviews) {
  std::string out;
  for (const auto& review : reviews) {
    ordered_json obj;
    obj["review_id"] = review.review_id;
    obj["tokens"] = review.tokens;
    obj["original_token_count"] = review.original_token_count;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<TokenizedReview> tokenized_from_jsonl(std::string_view content) {
  std::vector<TokenizedReview> reviews;
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
      msg << "tokenized corpus line " << line_no << ": malformed json: " << e.what();
      throw std::runtime_error(msg.str());
    }
    TokenizedReview review;
    review.review_id = obj.at("review_id").get<std::string>();
    review.tokens = obj.at("tokens").get<std::vector<std::string>>();
    review.original_token_count = obj.at("original_token_count").get<std::size_t>();
    reviews.push_back(std::move(review));
  }
  return reviews;
}

}  // namespace triage
