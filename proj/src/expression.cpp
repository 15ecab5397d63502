#include "solidsum/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "solidsum/error.hpp"

namespace solidsum {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    double parse()
    {
        const double value = sum();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    double sum()
    {
        double value = product();
        for (;;) {
            if (accept('+'))
                value += product();
            else if (accept('-'))
                value -= product();
            else
                return value;
        }
    }

    double product()
    {
        double value = unary();
        for (;;) {
            if (accept('*')) {
                value *= unary();
            } else if (accept('/')) {
                const double divisor = unary();
                if (divisor == 0.0)
                    fail("division by zero");
                value /= divisor;
            } else {
                return value;
            }
        }
    }

    double unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return atom();
    }

    double atom()
    {
        skip_space();
        if (accept('(')) {
            const double value = sum();
            expect(')');
            return value;
        }
        if (text_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            expect('(');
            const double arg = sum();
            expect(')');
            if (arg < 0.0)
                fail("sqrt of a negative number");
            return std::sqrt(arg);
        }
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr == begin)
            fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::ParseError, what + " at position " + std::to_string(pos_) +
                                               " in \"" + std::string(text_) + "\"");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

double parse_real_expression(std::string_view text)
{
    return Parser(text).parse();
}

}  // namespace solidsum
