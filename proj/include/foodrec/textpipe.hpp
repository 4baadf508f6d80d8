#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace foodrec {

/// Ordered, lowercase, stemmed tokens with stop words removed.
using TermList = std::vector<std::string>;

/// Porter (1980) suffix stripper, following the reference C implementation.
/// Input must be lowercase ASCII; words of length <= 2 are returned as is.
std::string porter_stem(std::string_view word);

class StopList {
 public:
  StopList() = default;
  explicit StopList(std::unordered_set<std::string> words)
      : words_(std::move(words)) {}

  /// The bundled English list.
  static const StopList& english();

  /// One word per line; blank lines and `#` comments skipped. Words are
  /// normalized so they compare against normalized tokens.
  static StopList parse(std::string_view text);
  static StopList load(const std::filesystem::path& path);

  bool contains(std::string_view token) const {
    return words_.contains(std::string(token));
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Lowercases ASCII letters and replaces every other non-alphanumeric,
/// non-whitespace byte with a space.
std::string normalize(std::string_view text);

/// Maximal runs of [a-z0-9].
std::vector<std::string> tokenize(std::string_view normalized);

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopList& stops = StopList::english());

std::vector<std::string> stem(std::vector<std::string> tokens);

/// normalize -> tokenize -> remove_stopwords -> stem.
TermList preprocess(std::string_view text, const StopList& stops = StopList::english());

}  // namespace foodrec
