#include "triage/porter.hpp"

namespace triage {

namespace {

// Working buffer for one word. The suffix rules below mutate `word` in
// place; helpers compute the m-measure and letter-shape conditions of the
// algorithm on the current stem.
struct Stemmer {
  std::string word;

  bool is_consonant(std::size_t i) const {
    char c = word[i];
    switch (c) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 || !is_consonant(i - 1);
      default:
        return true;
    }
  }

  // m of word[0..len): number of VC sequences in [C](VC){m}[V].
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(i)) ++i;
    while (i < len) {
      while (i < len && !is_consonant(i)) ++i;
      if (i < len) ++m;
      while (i < len && is_consonant(i)) ++i;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!is_consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant_at_end() const {
    std::size_t n = word.size();
    return n >= 2 && word[n - 1] == word[n - 2] && is_consonant(n - 1);
  }

  // *o: stem of length `len` ends consonant-vowel-consonant, final consonant
  // not w, x or y.
  bool ends_cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!is_consonant(len - 3) || is_consonant(len - 2) || !is_consonant(len - 1)) return false;
    char c = word[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view suffix) const {
    return word.size() >= suffix.size() &&
           word.compare(word.size() - suffix.size(), suffix.size(), suffix) == 0;
  }

  std::size_t stem_len(std::string_view suffix) const { return word.size() - suffix.size(); }

  void replace(std::string_view suffix, std::string_view repl) {
    word.resize(word.size() - suffix.size());
    word.append(repl);
  }
};

struct Rule {
  std::string_view suffix;
  std::string_view repl;
};

// Longest matching suffix is selected first; only then is the m-condition
// tested. A failed condition means no change for the whole step.
bool apply_longest(Stemmer& s, std::initializer_list<Rule> rules, int min_measure) {
  const Rule* best = nullptr;
  for (const Rule& rule : rules) {
    if (s.ends_with(rule.suffix) && (!best || rule.suffix.size() > best->suffix.size())) {
      best = &rule;
    }
  }
  if (!best) return false;
  if (s.measure(s.stem_len(best->suffix)) > min_measure) {
    s.replace(best->suffix, best->repl);
    return true;
  }
  return false;
}

void step1a(Stemmer& s) {
  if (s.word.back() != 's') return;
  if (s.ends_with("sses")) {
    s.replace("sses", "ss");
  } else if (s.ends_with("ies")) {
    s.replace("ies", "i");
  } else if (!s.ends_with("ss")) {
    s.word.pop_back();
  }
}

void step1b(Stemmer& s) {
  if (s.ends_with("eed")) {
    if (s.measure(s.stem_len("eed")) > 0) s.word.pop_back();
    return;
  }
  bool stripped = false;
  if (s.ends_with("ed") && s.has_vowel(s.stem_len("ed"))) {
    s.replace("ed", "");
    stripped = true;
  } else if (s.ends_with("ing") && s.has_vowel(s.stem_len("ing"))) {
    s.replace("ing", "");
    stripped = true;
  }
  if (!stripped) return;
  if (s.ends_with("at") || s.ends_with("bl") || s.ends_with("iz")) {
    s.word.push_back('e');
  } else if (s.double_consonant_at_end()) {
    char c = s.word.back();
    if (c != 'l' && c != 's' && c != 'z') s.word.pop_back();
  } else if (s.measure(s.word.size()) == 1 && s.ends_cvc(s.word.size())) {
    s.word.push_back('e');
  }
}

void step1c(Stemmer& s) {
  if (s.word.back() == 'y' && s.has_vowel(s.word.size() - 1)) {
    s.word.back() = 'i';
  }
}

void step4(Stemmer& s) {
  static constexpr std::string_view kSuffixes[] = {
      "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
      "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize"};
  std::string_view best;
  for (std::string_view suffix : kSuffixes) {
    if (s.ends_with(suffix) && suffix.size() > best.size()) best = suffix;
  }
  if (best.empty()) return;
  std::size_t len = s.stem_len(best);
  if (s.measure(len) <= 1) return;
  if (best == "ion" && s.word[len - 1] != 's' && s.word[len - 1] != 't') return;
  s.replace(best, "");
}

void step5a(Stemmer& s) {
  if (s.word.back() != 'e') return;
  std::size_t len = s.word.size() - 1;
  int m = s.measure(len);
  if (m > 1 || (m == 1 && !s.ends_cvc(len))) s.word.pop_back();
}

void step5b(Stemmer& s) {
  if (s.word.back() == 'l' && s.double_consonant_at_end() && s.measure(s.word.size()) > 1) {
    s.word.pop_back();
  }
}

}  // namespace

std::string porter_stem(std::string_view token) {
  if (token.size() <= 2) return std::string(token);
  Stemmer s{std::string(token)};
  step1a(s);
  step1b(s);
  step1c(s);
  apply_longest(s,
                {{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
                 {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
                 {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
                 {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
                 {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
                 {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
                 {"iviti", "ive"},   {"biliti", "ble"}},
                0);
  apply_longest(s,
                {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
                 {"ical", "ic"},  {"ful", ""},   {"ness", ""}},
                0);
  step4(s);
  step5a(s);
  step5b(s);
  return std::move(s.word);
}

}  // namespace triage
