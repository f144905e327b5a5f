#pragma once

#include <string_view>

namespace slantsum::detail {

// Contents of core/data/*.txt, compiled in at configure time.
std::string_view embedded_stopwords();
std::string_view embedded_abbreviations();

}  // namespace slantsum::detail
