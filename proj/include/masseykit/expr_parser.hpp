// Recursive-descent parser for arithmetic expressions over a domain.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary | unary)*     juxtaposition multiplies
//   unary := '-' unary | power
//   power := atom ('^' '-'? integer)?
//   atom  := integer | identifier | '(' expr ')'
//
// A Domain supplies
//   using value_type = ...;               with + - * / and unary -
//   value_type constant(std::int64_t);
//   std::optional<value_type> variable(std::string_view);
//   value_type pow(const value_type&, std::int64_t);
// Domain errors (std::domain_error, std::invalid_argument) are reported as
// ParseError at the offending operator.

#ifndef MASSEYKIT_EXPR_PARSER_HPP
#define MASSEYKIT_EXPR_PARSER_HPP

#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "masseykit/parse_error.hpp"

namespace masseykit {

template <class Domain>
class ExprParser {
   public:
    using value_type = typename Domain::value_type;

    ExprParser(std::string_view text, Domain& domain) : s_(text), d_(domain) {}

    value_type parse() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "empty expression");
        value_type v = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        return v;
    }

   private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_atom() {
        skip();
        if (pos_ >= s_.size()) return false;
        unsigned char c = static_cast<unsigned char>(s_[pos_]);
        return std::isdigit(c) || std::isalpha(c) || c == '(';
    }

    template <class F>
    value_type guarded(std::size_t at, F&& f) {
        try {
            return f();
        } catch (const ParseError&) {
            throw;
        } catch (const std::domain_error& e) {
            throw ParseError(at, e.what());
        } catch (const std::invalid_argument& e) {
            throw ParseError(at, e.what());
        }
    }

    value_type expr() {
        value_type v = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                v = v + term();
            } else if (peek('-')) {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    value_type term() {
        value_type v = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                v = v * unary();
            } else if (peek('/')) {
                std::size_t at = pos_++;
                value_type r = unary();
                v = guarded(at, [&] { return v / r; });
            } else if (starts_atom()) {
                v = v * unary();
            } else {
                return v;
            }
        }
    }

    value_type unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        return power();
    }

    value_type power() {
        value_type base = atom();
        if (!peek('^')) return base;
        std::size_t at = pos_++;
        skip();
        bool negative = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            negative = true;
            ++pos_;
            skip();
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError(pos_, "expected integer exponent");
        std::int64_t e = integer();
        return guarded(at, [&] { return d_.pow(base, negative ? -e : e); });
    }

    std::int64_t integer() {
        std::size_t start = pos_;
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            int digit = s_[pos_] - '0';
            if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10)
                throw ParseError(start, "integer too large");
            v = v * 10 + digit;
            ++pos_;
        }
        return v;
    }

    value_type atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        unsigned char c = static_cast<unsigned char>(s_[pos_]);
        if (c == '(') {
            ++pos_;
            value_type v = expr();
            if (!peek(')')) throw ParseError(pos_, "expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(c)) return d_.constant(integer());
        if (std::isalpha(c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string_view name = s_.substr(start, pos_ - start);
            auto v = d_.variable(name);
            if (!v) throw ParseError(start, "unknown symbol '" + std::string(name) + "'");
            return *v;
        }
        throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    }

    std::string_view s_;
    Domain& d_;
    std::size_t pos_ = 0;
};

template <class Domain>
typename Domain::value_type parse_expression(std::string_view text, Domain& domain) {
    return ExprParser<Domain>(text, domain).parse();
}

}  // namespace masseykit

#endif  // MASSEYKIT_EXPR_PARSER_HPP
