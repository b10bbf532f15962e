#pragma once

#include <string>
#include <string_view>

namespace topicmine {

// Porter's 1980 suffix-stripping algorithm. Operates on lowercase ASCII
// words; tokens containing anything outside [a-z] (accented characters,
// digits) are returned unchanged, which leaves non-English vocabulary
// alone without any language detection.
std::string porter_stem(std::string_view word);

}  // namespace topicmine
