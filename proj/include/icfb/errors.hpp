#pragma once

#include <stdexcept>
#include <string>

namespace icfb {

// Malformed input documents (configs, region files, distribution files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation would exceed a configured size cap (joint cells, codebook
// size, decoder search size, family size).
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace icfb
