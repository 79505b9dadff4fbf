// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace jcm {

// Numeric domain failure (negative radicand, function undefined at an
// eigenvalue, singular coefficient). The CLI maps this to exit code 3.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jcm
