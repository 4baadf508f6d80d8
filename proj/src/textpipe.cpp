#include "foodrec/textpipe.hpp"

#include <fstream>
#include <sstream>

#include "foodrec/error.hpp"
#include "resources.hpp"

namespace foodrec {
namespace {

bool is_alnum(char ch) {
  return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9');
}

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v';
}

}  // namespace

const StopList& StopList::english() {
  static const StopList list = parse(resources::stopwords_txt);
  return list;
}

StopList StopList::parse(std::string_view text) {
  std::unordered_set<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (auto& token : tokenize(normalize(line))) words.insert(std::move(token));
  }
  return StopList(std::move(words));
}

StopList StopList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open stop list: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    if (ch >= 'A' && ch <= 'Z') {
      out.push_back(static_cast<char>(ch - 'A' + 'a'));
    } else if (is_alnum(ch) || is_space(ch)) {
      out.push_back(ch);
    } else {
      out.push_back(' ');
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && !is_alnum(normalized[i])) ++i;
    const std::size_t start = i;
    while (i < normalized.size() && is_alnum(normalized[i])) ++i;
    if (i > start) tokens.emplace_back(normalized.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopList& stops) {
  std::erase_if(tokens, [&](const std::string& t) { return stops.contains(t); });
  return tokens;
}

std::vector<std::string> stem(std::vector<std::string> tokens) {
  for (auto& t : tokens) t = porter_stem(t);
  return tokens;
}

TermList preprocess(std::string_view text, const StopList& stops) {
  auto terms = stem(remove_stopwords(tokenize(normalize(text)), stops));
  // A stem can collide with a stop word ("ones" -> "on").
  return remove_stopwords(std::move(terms), stops);
}

}  // namespace foodrec
