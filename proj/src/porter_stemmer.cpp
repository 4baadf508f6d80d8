#include <string>
#include <string_view>

#include "foodrec/textpipe.hpp"

namespace foodrec {
namespace {

// Direct port of the reference algorithm. `k_` is the index of the last
// character of the current stem, `j_` marks the end of the stem preceding a
// matched suffix (may be -1).
class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word)
      : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() && {
    if (k_ <= 1) return std::move(b_);
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
    return std::move(b_);
  }

 private:
  char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

  bool cons(int i) const {
    switch (at(i)) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0..j_].
  int measure() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_cons(int j) const {
    if (j < 1) return false;
    if (at(j) != at(j - 1)) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, last consonant not w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = at(i);
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - len + 1),
                                    s.size()) != s) {
      return false;
    }
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.resize(static_cast<std::size_t>(j_ + 1));
    b_.append(s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measured(std::string_view s) {
    if (measure() > 0) set_to(s);
  }

  // Tries each (suffix, replacement) in order; the first suffix that matches
  // ends the search whether or not the replacement applies.
  template <std::size_t N>
  void first_match(const std::pair<std::string_view, std::string_view> (&rules)[N]) {
    for (const auto& [suffix, repl] : rules) {
      if (ends(suffix)) {
        replace_if_measured(repl);
        return;
      }
    }
  }

  void step1ab() {
    if (at(k_) == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (at(k_ - 1) != 's') {
        --k_;
      }
    }
    if (ends("eed")) {
      if (measure() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_cons(k_)) {
        --k_;
        const char ch = at(k_);
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else {
        j_ = k_;
        if (measure() == 1 && cvc(k_)) set_to("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  void step2() {
    if (k_ < 1) return;
    switch (at(k_ - 1)) {
      case 'a': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ational", "ate"}, {"tional", "tion"}};
        first_match(r);
        break;
      }
      case 'c': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"enci", "ence"}, {"anci", "ance"}};
        first_match(r);
        break;
      }
      case 'e': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"izer", "ize"}};
        first_match(r);
        break;
      }
      case 'l': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"},
            {"ousli", "ous"}};
        first_match(r);
        break;
      }
      case 'o': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
        first_match(r);
        break;
      }
      case 's': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}};
        first_match(r);
        break;
      }
      case 't': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
        first_match(r);
        break;
      }
      case 'g': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"logi", "log"}};
        first_match(r);
        break;
      }
      default:
        break;
    }
  }

  void step3() {
    switch (at(k_)) {
      case 'e': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
        first_match(r);
        break;
      }
      case 'i': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"iciti", "ic"}};
        first_match(r);
        break;
      }
      case 'l': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ical", "ic"}, {"ful", ""}};
        first_match(r);
        break;
      }
      case 's': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ness", ""}};
        first_match(r);
        break;
      }
      default:
        break;
    }
  }

  bool step4_suffix() {
    if (k_ < 1) return false;
    switch (at(k_ - 1)) {
      case 'a':
        return ends("al");
      case 'c':
        return ends("ance") || ends("ence");
      case 'e':
        return ends("er");
      case 'i':
        return ends("ic");
      case 'l':
        return ends("able") || ends("ible");
      case 'n':
        return ends("ant") || ends("ement") || ends("ment") || ends("ent");
      case 'o':
        if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) return true;
        return ends("ou");
      case 's':
        return ends("ism");
      case 't':
        return ends("ate") || ends("iti");
      case 'u':
        return ends("ous");
      case 'v':
        return ends("ive");
      case 'z':
        return ends("ize");
      default:
        return false;
    }
  }

  void step4() {
    if (step4_suffix() && measure() > 1) k_ = j_;
  }

  void step5() {
    const int last = k_;
    j_ = k_;
    if (at(last) == 'e') {
      const int m = measure();
      if (m > 1 || (m == 1 && !cvc(k_ - 1))) --k_;
    }
    if (at(last) == 'l' && double_cons(last) && measure() > 1) --k_;
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  return PorterStemmer(word).run();
}

}  // namespace foodrec
