#pragma once

#include <string_view>

namespace foodrec::resources {

// Contents of data/stopwords.txt and data/rules.json, embedded at build time.
extern const std::string_view stopwords_txt;
extern const std::string_view default_rules_json;

}  // namespace foodrec::resources
