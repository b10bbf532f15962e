#include "topicmine/stemmer.hpp"

#include <array>

namespace topicmine {
namespace {

bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }

// Signed indices throughout; j is the inclusive end of the candidate stem
// and may legitimately reach -1 for an empty stem.
struct Stem {
  std::string b;
  int k = 0;  // inclusive end of the word
  int j = 0;

  bool cons(int i) const {
    switch (b[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // number of VC sequences in b[0..j]
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool doublec(int i) const {
    if (i < 1) return false;
    if (b[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i - 1)]) return false;
    return cons(i);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char c = b[static_cast<std::size_t>(i)];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) {
    const int l = static_cast<int>(s.size());
    if (l > k + 1) return false;
    if (b.compare(static_cast<std::size_t>(k + 1 - l), s.size(), s) != 0) return false;
    j = k - l;
    return true;
  }

  void set_to(std::string_view s) {
    b.resize(static_cast<std::size_t>(j + 1));
    b.append(s);
    k = static_cast<int>(b.size()) - 1;
  }

  void r(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void step1ab() {
    if (b[static_cast<std::size_t>(k)] == 's') {
      if (ends("sses")) k -= 2;
      else if (ends("ies")) set_to("i");
      else if (b[static_cast<std::size_t>(k - 1)] != 's') --k;
    }
    if (ends("eed")) {
      if (m() > 0) --k;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k = j;
      if (ends("at")) set_to("ate");
      else if (ends("bl")) set_to("ble");
      else if (ends("iz")) set_to("ize");
      else if (doublec(k)) {
        const char c = b[static_cast<std::size_t>(k)];
        if (c != 'l' && c != 's' && c != 'z') --k;
      } else {
        j = k;
        if (m() == 1 && cvc(k)) set_to("e");
      }
    }
    b.resize(static_cast<std::size_t>(k + 1));
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b[static_cast<std::size_t>(k)] = 'i';
  }

  void step2() {
    struct Rule { std::string_view from, to; };
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    }};
    for (const auto& rule : rules) {
      if (ends(rule.from)) { r(rule.to); return; }
    }
  }

  void step3() {
    struct Rule { std::string_view from, to; };
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    for (const auto& rule : rules) {
      if (ends(rule.from)) { r(rule.to); return; }
    }
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> suffixes{
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion",
        "ism",   "ate",  "iti",  "ous",  "ive",  "ize",  "al",  "er",  "ic", "ou",
    };
    for (const auto& s : suffixes) {
      if (!ends(s)) continue;
      if (s == "ion") {
        if (j < 0) return;
        const char c = b[static_cast<std::size_t>(j)];
        if (c != 's' && c != 't') return;
      }
      if (m() > 1) {
        k = j;
        b.resize(static_cast<std::size_t>(k + 1));
      }
      return;
    }
  }

  void step5() {
    j = k;
    if (b[static_cast<std::size_t>(k)] == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k - 1))) --k;
    }
    if (b[static_cast<std::size_t>(k)] == 'l' && doublec(k) && m() > 1) --k;
    b.resize(static_cast<std::size_t>(k + 1));
  }
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.size() <= 2) return std::string(word);
  for (char c : word)
    if (!is_lower_alpha(c)) return std::string(word);
  Stem s;
  s.b.assign(word);
  s.k = static_cast<int>(s.b.size()) - 1;
  s.step1ab();
  s.step1c();
  s.step2();
  s.step3();
  s.step4();
  s.step5();
  s.b.resize(static_cast<std::size_t>(s.k + 1));
  return s.b;
}

}  // namespace topicmine
