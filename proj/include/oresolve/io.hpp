#pragma once

// Text grammar for polynomials, rational functions and operators:
// integer literals, `x`, `+ - * / ^`, parentheses, and the shift symbol
// `t` (alias `tau`). Printing round-trips through the parser.

#include <cctype>
#include <stdexcept>
#include <string>

#include "oresolve/ore.hpp"

namespace oresolve {

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

namespace detail_io {

class Parser {
public:
    explicit Parser(const std::string& text, bool allow_tau) : s_(text), allow_tau_(allow_tau) {}

    OrePoly parse() {
        OrePoly v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return v;
    }

private:
    OrePoly expr() {
        skip_ws();
        OrePoly v;
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = get() == '-';
        v = term();
        if (neg) v = -v;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            OrePoly t = term();
            v = c == '+' ? v + t : v - t;
        }
        return v;
    }

    OrePoly term() {
        OrePoly v = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') break;
            size_t at = pos_;
            get();
            OrePoly f = factor();
            if (c == '*') {
                v = v * f;
            } else {
                if (f.order() != 0)
                    throw ParseError("division by an operator of positive order", at);
                if (f.is_zero()) throw ParseError("division by zero", at);
                v = v.scaled(f.coeff(0).inv());
            }
        }
        return v;
    }

    OrePoly factor() {
        skip_ws();
        if (peek() == '-') {
            get();
            return -factor();
        }
        if (peek() == '+') {
            get();
            return factor();
        }
        OrePoly v = atom();
        skip_ws();
        while (peek() == '^') {
            size_t at = pos_;
            get();
            skip_ws();
            long e = integer_literal();
            if (e < 0) throw ParseError("negative exponent", at);
            OrePoly r(1);
            OrePoly base = v;
            for (long i = 0; i < e; ++i) r = r * base;
            v = std::move(r);
            skip_ws();
        }
        return v;
    }

    OrePoly atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            OrePoly v = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            get();
            return v;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (std::isdigit((unsigned char)peek())) get();
            return OrePoly(RatFunc(Rat(Int(s_.substr(start, pos_ - start)), Int(1))));
        }
        if (std::isalpha((unsigned char)c)) {
            size_t start = pos_;
            while (std::isalnum((unsigned char)peek()) || peek() == '_') get();
            std::string name = s_.substr(start, pos_ - start);
            if (name == "x") return OrePoly(RatFunc::x());
            if (allow_tau_ && (name == "t" || name == "tau")) return OrePoly::tau();
            throw ParseError("unknown symbol '" + name + "'", start);
        }
        throw ParseError("expected a value", pos_);
    }

    long integer_literal() {
        skip_ws();
        if (!std::isdigit((unsigned char)peek())) throw ParseError("expected an integer", pos_);
        long v = 0;
        while (std::isdigit((unsigned char)peek())) {
            v = v * 10 + (get() - '0');
            if (v > 1000000) throw ParseError("exponent too large", pos_);
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }

    const std::string& s_;
    bool allow_tau_;
    size_t pos_ = 0;
};

}  // namespace detail_io

inline OrePoly parse_operator(const std::string& text) {
    return detail_io::Parser(text, true).parse();
}

inline RatFunc parse_ratfunc(const std::string& text) {
    OrePoly v = detail_io::Parser(text, false).parse();
    if (v.is_zero()) return RatFunc(0);
    return v.coeff(0);
}

inline Poly parse_poly(const std::string& text) {
    RatFunc f = parse_ratfunc(text);
    if (!f.is_polynomial()) throw ParseError("expected a polynomial", 0);
    return f.num();
}

inline std::string OrePoly::str(const std::string& op) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        RatFunc c = c_[i];
        if (c.is_zero()) continue;
        // fold the sign of single-term coefficients into the separator
        bool neg = false;
        {
            std::string probe = c.str();
            if (!probe.empty() && probe[0] == '-' && probe.find(" + ") == std::string::npos &&
                probe.find(" - ") == std::string::npos) {
                neg = true;
                c = -c;
            }
        }
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string cs = c.str();
        bool needs_parens = cs.find(' ') != std::string::npos;
        std::string cpart = needs_parens ? "(" + cs + ")" : cs;
        if (i == 0) {
            out += cpart;
        } else {
            std::string tpart = op + (i > 1 ? "^" + std::to_string(i) : "");
            out += c.is_one() ? tpart : cpart + "*" + tpart;
        }
    }
    return out;
}

}  // namespace oresolve
