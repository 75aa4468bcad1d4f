#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "starq/poly.hpp"

namespace starq {

// Recursive-descent parser for polynomial expressions over u1..un, xi1..xin.
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := atom ('^' uint)?
//   atom     := rational | var | '(' expr ')'
//   var      := ('u'|'xi') index
//   rational := uint ('/' uint)?
//
// Round-trips exactly with Poly::str().
namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, int n) : text_(text), n_(n) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Poly expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = take() == '-';
        Poly acc = term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') break;
            take();
            Poly t = term();
            if (c == '+') acc += t; else acc -= t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (true) {
            skip_ws();
            if (peek() != '*') break;
            take();
            acc = acc * factor();
        }
        return acc;
    }

    Poly factor() {
        Poly base = atom();
        skip_ws();
        if (peek() == '^') {
            take();
            const unsigned e = parse_uint("exponent");
            Poly acc = Poly::constant(n_, 1);
            for (unsigned i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            take();
            Poly inner = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            take();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_atom();
        if (c == 'u') {
            take();
            const int i = var_index();
            return Poly::variable_u(n_, i);
        }
        if (c == 'x') {
            take();
            if (peek() != 'i') fail("expected 'xi'");
            take();
            const int i = var_index();
            return Poly::variable_xi(n_, i);
        }
        fail("expected number, variable or '('");
    }

    Poly rational_atom() {
        const BigInt num = parse_bigint("numerator");
        if (peek() == '/') {
            take();
            const std::size_t at = pos_;
            const BigInt den = parse_bigint("denominator");
            if (den == 0) fail_at(at, "zero denominator");
            return Poly::constant(n_, Rational(num, den));
        }
        return Poly::constant(n_, Rational(num, BigInt(1)));
    }

    int var_index() {
        const std::size_t at = pos_;
        const unsigned i = parse_uint("variable index");
        if (i < 1 || static_cast<int>(i) > n_)
            fail_at(at, "variable index out of range 1.." + std::to_string(n_));
        return static_cast<int>(i);
    }

    unsigned parse_uint(const char* what) {
        const BigInt v = parse_bigint(what);
        if (v > 1000000) fail("unreasonably large " + std::string(what));
        return static_cast<unsigned>(v);
    }

    BigInt parse_bigint(const char* what) {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected " + std::string(what));
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits += take();
        return BigInt(digits);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return text_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        throw parse_error(at, "parse error at position " + std::to_string(at) + ": " + msg);
    }

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(std::string_view text, int n) {
    return detail::PolyParser(text, n).parse();
}

} // namespace starq
