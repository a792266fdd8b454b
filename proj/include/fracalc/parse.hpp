#pragma once

#include <cctype>
#include <charconv>
#include <string_view>

#include "fracalc/function_space.hpp"

namespace fracalc {

namespace detail {

// Grammar:
//   expr := term (('+'|'-') term)*
//   term := number '*' atom | atom
//   atom := 'x' ['^' number] | 'sin(x)' | 'cos(x)' | 'exp(' number '*x)' | number
// Numbers accept decimal literals plus 'pi' and 'e'.
class ExprParser {
public:
    ExprParser(std::string_view src, BasePoint base) : src_(src), base_(base) {}

    CausalFunction run() {
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        std::vector<Term> terms;
        terms.push_back(parse_term(sign));
        skip_ws();
        while (pos_ < src_.size()) {
            const char op = src_[pos_];
            if (op != '+' && op != '-')
                throw ParseError(pos_, "'+', '-', or end of expression");
            ++pos_;
            skip_ws();
            terms.push_back(parse_term(op == '-' ? -1.0 : 1.0));
            skip_ws();
        }
        return CausalFunction::from_terms(base_, std::move(terms));
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool starts_with(std::string_view kw) const { return src_.substr(pos_).starts_with(kw); }

    // 'exp(' is an atom; a bare 'e' is Euler's number.
    bool starts_number() const {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return true;
        if (c == '+' || c == '-') return true;
        if (starts_with("pi")) return true;
        return c == 'e' && !starts_with("exp(");
    }

    double parse_number() {
        skip_ws();
        const std::size_t at = pos_;
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
            skip_ws();
        }
        if (starts_with("pi")) {
            pos_ += 2;
            return sign * kPi;
        }
        if (peek() == 'e' && !starts_with("exp(")) {
            ++pos_;
            return sign * 2.71828182845904523536028747135266250;
        }
        double value = 0.0;
        const char* first = src_.data() + pos_;
        const char* last = src_.data() + src_.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) throw ParseError(at, "a number");
        pos_ = static_cast<std::size_t>(ptr - src_.data());
        return sign * value;
    }

    Term parse_term(double sign) {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "a term");
        if (starts_number()) {
            const double coeff = parse_number();
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                return parse_atom(sign * coeff);
            }
            return Term{Constant{Complex(sign * coeff, 0.0)}};
        }
        return parse_atom(sign);
    }

    Term parse_atom(double coeff) {
        skip_ws();
        const std::size_t at = pos_;
        if (peek() == 'x') {
            ++pos_;
            double power = 1.0;
            if (peek() == '^') {
                ++pos_;
                const std::size_t pat = pos_;
                power = parse_number();
                if (power <= -1.0)
                    throw ParseError(pat, "a monomial exponent greater than -1");
            }
            return Term{Monomial{Complex(coeff, 0.0), Complex(power, 0.0)}};
        }
        if (starts_with("sin(x)")) {
            pos_ += 6;
            return Term{Sinusoid{Complex(coeff, 0.0), 0.0}};
        }
        if (starts_with("cos(x)")) {
            pos_ += 6;
            return Term{Cosinusoid{Complex(coeff, 0.0), 0.0}};
        }
        if (starts_with("exp(")) {
            pos_ += 4;
            const std::size_t rat = pos_;
            const double rate = parse_number();
            if (rate == 0.0) throw ParseError(rat, "a nonzero exponential rate");
            skip_ws();
            if (!starts_with("*x)")) throw ParseError(pos_, "'*x)' after the exponential rate");
            pos_ += 3;
            return Term{Exponential{Complex(coeff, 0.0), Complex(rate, 0.0)}};
        }
        if (starts_number()) {
            const double value = parse_number();
            return Term{Constant{Complex(coeff * value, 0.0)}};
        }
        throw ParseError(at, "'x', 'sin(x)', 'cos(x)', 'exp(k*x)', or a number");
    }

    std::string_view src_;
    BasePoint base_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse an expression in the CLI grammar. The base point arrives
/// out-of-band; it is never part of the expression text.
inline CausalFunction parse(std::string_view src, BasePoint base) {
    return detail::ExprParser(src, base).run();
}

}  // namespace fracalc
