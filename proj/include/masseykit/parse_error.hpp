#ifndef MASSEYKIT_PARSE_ERROR_HPP
#define MASSEYKIT_PARSE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace masseykit {

/// Error from one of the input grammars; `position` is a 0-based offset.
class ParseError : public std::invalid_argument {
   public:
    ParseError(std::size_t position, const std::string& what)
        : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

}  // namespace masseykit

#endif  // MASSEYKIT_PARSE_ERROR_HPP
