#include "foodrec/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "foodrec/error.hpp"
#include "random.hpp"

namespace foodrec {

using nlohmann::json;

namespace detail {

std::vector<std::size_t> apportion(const std::vector<double>& weights, std::size_t total) {
  std::vector<std::size_t> out(weights.size(), 0);
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (weights.empty() || sum <= 0.0) return out;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] / sum * static_cast<double>(total);
    out[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += out[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < total && r < remainders.size(); ++r, ++assigned) {
    ++out[remainders[r].second];
  }
  return out;
}

}  // namespace detail

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed: " + path.string());
}

std::string lower(std::string s) {
  for (auto& ch : s) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::set<std::string> split_list(std::string_view s, bool lowercase) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto bar = s.find('|', start);
    const auto piece = trim(s.substr(start, bar == std::string_view::npos ? s.npos : bar - start));
    if (!piece.empty()) out.insert(lowercase ? lower(piece) : piece);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

std::string join_list(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += '|';
    out += s;
  }
  return out;
}

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 records; `#` at the start of a record marks a comment line.
std::vector<CsvRecord> parse_csv_records(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  if (text.starts_with("\xEF\xBB\xBF")) i = 3;
  while (i < text.size()) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool in_quotes = false;
    bool done = false;
    while (!done) {
      if (i >= text.size()) {
        if (in_quotes) {
          throw Error(ErrorKind::format,
                      "line " + std::to_string(rec.line) + ": unterminated quoted field");
        }
        done = true;
        break;
      }
      const char ch = text[i++];
      if (in_quotes) {
        if (ch == '"') {
          if (i < text.size() && text[i] == '"') {
            field += '"';
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line;
          field += ch;
        }
      } else if (ch == '"') {
        if (!trim(field).empty()) {
          throw Error(ErrorKind::format,
                      "line " + std::to_string(line) + ": stray quote inside unquoted field");
        }
        field.clear();
        in_quotes = true;
      } else if (ch == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
      } else if (ch == '\n') {
        ++line;
        done = true;
      } else if (ch != '\r') {
        field += ch;
      }
    }
    rec.fields.push_back(std::move(field));
    const bool blank = rec.fields.size() == 1 && trim(rec.fields[0]).empty();
    if (!blank) records.push_back(std::move(rec));
  }
  return records;
}

std::string csv_field(const std::string& s) {
  const bool quote = s.find_first_of(",\"\n\r") != std::string::npos ||
                     s.starts_with('#') || s != trim(s);
  if (!quote) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::set<std::string> string_set(const json& j, const char* key, bool lowercase,
                                 const std::string& where) {
  std::set<std::string> out;
  if (!j.contains(key) || j[key].is_null()) return out;
  if (!j[key].is_array()) throw Error(ErrorKind::format, where + ": '" + key + "' must be an array");
  for (const auto& v : j[key]) {
    if (!v.is_string()) {
      throw Error(ErrorKind::format, where + ": '" + key + "' entries must be strings");
    }
    const auto s = trim(v.get<std::string>());
    if (!s.empty()) out.insert(lowercase ? lower(s) : s);
  }
  return out;
}

std::string required_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw Error(ErrorKind::format, where + ": missing string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::format, std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace

Corpus::Corpus(std::vector<FoodItem> items) : items_(std::move(items)) {
  std::set<std::string> dups;
  bool empty_id = false;
  index_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].id.empty()) {
      empty_id = true;
      continue;
    }
    if (!index_.emplace(items_[i].id, i).second) dups.insert(items_[i].id);
  }
  if (empty_id) throw Error(ErrorKind::validation, "food item with empty id");
  if (!dups.empty()) {
    std::string msg = "duplicate item id(s):";
    for (const auto& d : dups) msg += " " + d;
    throw Error(ErrorKind::validation, msg);
  }
}

bool Corpus::contains(std::string_view id) const {
  return index_.contains(std::string(id));
}

const FoodItem* Corpus::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

const FoodItem& Corpus::at(std::string_view id) const {
  if (const auto* item = find(id)) return *item;
  throw Error(ErrorKind::not_found, "unknown item id: " + std::string(id));
}

std::set<std::string> Corpus::ids() const {
  std::set<std::string> out;
  for (const auto& item : items_) out.insert(item.id);
  return out;
}

Corpus Corpus::subset(const std::set<std::string>& keep) const {
  std::vector<FoodItem> out;
  for (const auto& item : items_) {
    if (keep.contains(item.id)) out.push_back(item);
  }
  return Corpus(std::move(out));
}

void validate_ratings(const RatingSet& ratings, const Corpus& corpus) {
  std::vector<std::string> problems;
  for (const auto& id : ratings.relevant) {
    if (ratings.non_relevant.contains(id)) problems.push_back("rated both ways: " + id);
    if (!corpus.contains(id)) problems.push_back("unknown item: " + id);
  }
  for (const auto& id : ratings.non_relevant) {
    if (!corpus.contains(id)) problems.push_back("unknown item: " + id);
  }
  if (!problems.empty()) {
    std::string msg = "ratings for user '" + ratings.user_id + "':";
    for (const auto& p : problems) msg += " [" + p + "]";
    throw Error(ErrorKind::validation, msg);
  }
}

CorpusFormat format_from_path(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".json" ? CorpusFormat::json : CorpusFormat::csv;
}

Corpus parse_corpus_csv(std::string_view text) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw Error(ErrorKind::validation, "empty corpus: no header or rows");

  const auto& header = records.front();
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.fields.size(); ++i) col[lower(trim(header.fields[i]))] = i;
  for (const char* required : {"id", "group", "name", "description"}) {
    if (!col.contains(required)) {
      throw Error(ErrorKind::format, "line " + std::to_string(header.line) +
                                         ": missing required column '" + required + "'");
    }
  }
  const auto optional_col = [&](const char* name) -> std::optional<std::size_t> {
    const auto it = col.find(name);
    return it == col.end() ? std::nullopt : std::optional(it->second);
  };
  const auto tags_col = optional_col("tags");
  const auto concepts_col = optional_col("concepts");

  std::vector<FoodItem> items;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.fields.size()) {
      throw Error(ErrorKind::format, "line " + std::to_string(rec.line) + ": expected " +
                                         std::to_string(header.fields.size()) + " fields, got " +
                                         std::to_string(rec.fields.size()));
    }
    FoodItem item;
    item.id = trim(rec.fields[col["id"]]);
    item.group = trim(rec.fields[col["group"]]);
    item.name = trim(rec.fields[col["name"]]);
    item.description = rec.fields[col["description"]];
    if (item.id.empty()) {
      throw Error(ErrorKind::validation, "line " + std::to_string(rec.line) + ": empty id");
    }
    if (tags_col) item.tags = split_list(rec.fields[*tags_col], true);
    if (concepts_col) item.concepts = split_list(rec.fields[*concepts_col], false);
    items.push_back(std::move(item));
  }
  if (items.empty()) throw Error(ErrorKind::validation, "empty corpus: header without rows");
  return Corpus(std::move(items));
}

Corpus parse_corpus_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_array()) throw Error(ErrorKind::format, "corpus JSON must be an array of items");
  std::vector<FoodItem> items;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    const std::string where = "item " + std::to_string(i);
    if (!j.is_object()) throw Error(ErrorKind::format, where + ": expected an object");
    FoodItem item;
    item.id = trim(required_string(j, "id", where));
    item.group = required_string(j, "group", where);
    item.name = required_string(j, "name", where);
    item.description = required_string(j, "description", where);
    item.tags = string_set(j, "tags", true, where);
    item.concepts = string_set(j, "concepts", false, where);
    items.push_back(std::move(item));
  }
  if (items.empty()) throw Error(ErrorKind::validation, "empty corpus");
  return Corpus(std::move(items));
}

Corpus load_corpus(const std::filesystem::path& path, std::optional<CorpusFormat> format) {
  const auto text = read_file(path);
  const auto fmt = format.value_or(format_from_path(path));
  try {
    return fmt == CorpusFormat::json ? parse_corpus_json(text) : parse_corpus_csv(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string corpus_to_csv(const Corpus& corpus) {
  bool annotated = false;
  for (const auto& item : corpus.items()) annotated = annotated || !item.concepts.empty();
  std::string out = annotated ? "id,group,name,description,tags,concepts\n"
                              : "id,group,name,description,tags\n";
  for (const auto& item : corpus.items()) {
    out += csv_field(item.id) + ',' + csv_field(item.group) + ',' + csv_field(item.name) + ',' +
           csv_field(item.description) + ',' + csv_field(join_list(item.tags));
    if (annotated) out += ',' + csv_field(join_list(item.concepts));
    out += '\n';
  }
  return out;
}

std::string corpus_to_json(const Corpus& corpus) {
  json doc = json::array();
  for (const auto& item : corpus.items()) {
    json j = {{"id", item.id},
              {"group", item.group},
              {"name", item.name},
              {"description", item.description},
              {"tags", item.tags}};
    if (!item.concepts.empty()) j["concepts"] = item.concepts;
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 std::optional<CorpusFormat> format) {
  const auto fmt = format.value_or(format_from_path(path));
  write_file(path, fmt == CorpusFormat::json ? corpus_to_json(corpus) : corpus_to_csv(corpus));
}

std::vector<RatingSet> parse_ratings_json(std::string_view text) {
  const json doc = parse_json(text);
  std::vector<RatingSet> out;
  const auto read_one = [&](const std::string& user, const json& j) {
    const std::string where = "user '" + user + "'";
    if (!j.is_object()) throw Error(ErrorKind::format, where + ": expected an object");
    RatingSet r;
    r.user_id = user;
    r.relevant = string_set(j, "relevant", false, where);
    r.non_relevant = string_set(j, "non_relevant", false, where);
    out.push_back(std::move(r));
  };
  if (doc.is_object()) {
    for (const auto& [user, j] : doc.items()) read_one(user, j);
  } else if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      read_one(required_string(doc[i], "user_id", "rating " + std::to_string(i)), doc[i]);
    }
  } else {
    throw Error(ErrorKind::format, "ratings JSON must be an object keyed by user id or an array");
  }
  std::set<std::string> seen;
  for (const auto& r : out) {
    if (r.user_id.empty()) throw Error(ErrorKind::validation, "rating with empty user id");
    if (!seen.insert(r.user_id).second) {
      throw Error(ErrorKind::validation, "duplicate user id in ratings: " + r.user_id);
    }
  }
  return out;
}

std::vector<RatingSet> load_ratings(const std::filesystem::path& path) {
  try {
    return parse_ratings_json(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::io) throw;
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string ratings_to_json(const std::vector<RatingSet>& ratings) {
  json doc = json::object();
  for (const auto& r : ratings) {
    doc[r.user_id] = {{"relevant", r.relevant}, {"non_relevant", r.non_relevant}};
  }
  return doc.dump(2) + "\n";
}

TrainTestSplit split_train_test(const Corpus& corpus, const SplitSpec& spec) {
  if (corpus.empty()) throw Error(ErrorKind::validation, "cannot split an empty corpus");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error(ErrorKind::validation, "train fraction must lie in (0, 1)");
  }
  const auto n = corpus.size();
  // Round half up; the epsilon absorbs binary representation error (0.45 * 10).
  const auto n_train = static_cast<std::size_t>(
      std::floor(spec.train_fraction * static_cast<double>(n) + 0.5 + 1e-9));

  detail::Rng rng(spec.seed);
  std::set<std::string> train_ids;
  if (!spec.stratified) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t i = 0; i < n_train; ++i) train_ids.insert(corpus.items()[order[i]].id);
  } else {
    std::map<std::string, std::vector<std::size_t>> by_group;
    for (std::size_t i = 0; i < n; ++i) by_group[corpus.items()[i].group].push_back(i);
    std::vector<double> sizes;
    for (const auto& [g, members] : by_group) sizes.push_back(static_cast<double>(members.size()));
    const auto quota = detail::apportion(sizes, n_train);
    std::size_t g = 0;
    for (auto& [name, members] : by_group) {
      rng.shuffle(members);
      for (std::size_t i = 0; i < quota[g] && i < members.size(); ++i) {
        train_ids.insert(corpus.items()[members[i]].id);
      }
      ++g;
    }
  }

  std::vector<FoodItem> train;
  std::vector<FoodItem> test;
  for (const auto& item : corpus.items()) {
    (train_ids.contains(item.id) ? train : test).push_back(item);
  }
  return {Corpus(std::move(train)), Corpus(std::move(test))};
}

}  // namespace foodrec
