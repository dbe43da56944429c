#include <cctype>

#include "ffexpand/mvpoly.hpp"

namespace ffx {
namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t nvars, FieldPtr field)
        : text_(text), nvars_(nvars), field_(std::move(field)) {}

    MvPoly run() {
        MvPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MvPoly expr() {
        MvPoly acc = term();
        while (true) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    MvPoly term() {
        MvPoly acc = unary();
        while (accept('*')) {
            const std::size_t at = pos_;
            acc = acc * unary();
            check_exponents(acc, at);
        }
        return acc;
    }

    MvPoly unary() {
        if (accept('-')) return -unary();
        return power();
    }

    MvPoly power() {
        MvPoly base = primary();
        if (!accept('^')) return base;
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            fail("expected a non-negative integer exponent");
        }
        std::uint64_t e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (e > kMaxExponent) throw ParseError("exponent overflow (cap " + std::to_string(kMaxExponent) + ")", at);
            ++pos_;
        }
        const int deg = base.total_degree();
        if (deg > 0 && static_cast<std::uint64_t>(deg) * e > kMaxExponent) {
            throw ParseError("exponent overflow (cap " + std::to_string(kMaxExponent) + ")", at);
        }
        MvPoly out = base.pow(static_cast<std::uint32_t>(e));
        return out;
    }

    MvPoly primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MvPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return integer();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    MvPoly integer() {
        const std::uint64_t p = field_->characteristic();
        std::uint64_t r = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            r = (r * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
            ++pos_;
        }
        return MvPoly::constant(field_, nvars_, static_cast<Raw>(r));
    }

    MvPoly identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "t") {
            if (field_->is_prime_field()) throw ParseError("'t' is only defined over extension fields", start);
            return MvPoly::constant(field_, nvars_, field_->generator().raw());
        }
        std::size_t index = 0;
        if (name == "x" || name == "y" || name == "z") {
            if (nvars_ > 3) throw ParseError("aliases x, y, z need at most 3 variables; use x1..xN", start);
            index = static_cast<std::size_t>(name[0] - 'x') + 1;
        } else if (name.size() > 1 && name[0] == 'x' &&
                   name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
            if (name.size() > 7) throw ParseError("variable index out of range", start);
            for (char d : name.substr(1)) index = index * 10 + static_cast<std::size_t>(d - '0');
        } else {
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        }
        if (index < 1 || index > nvars_) {
            throw ParseError("variable '" + std::string(name) + "' out of range for " + std::to_string(nvars_) +
                                 " variables",
                             start);
        }
        return MvPoly::variable(field_, nvars_, index - 1);
    }

    void check_exponents(const MvPoly& p, std::size_t at) const {
        for (const auto& [e, c] : p.terms()) {
            for (auto x : e) {
                if (x > kMaxExponent) throw ParseError("exponent overflow (cap " + std::to_string(kMaxExponent) + ")", at);
            }
        }
    }

    std::string_view text_;
    std::size_t nvars_;
    FieldPtr field_;
    std::size_t pos_ = 0;
};

}  // namespace

MvPoly parse_poly(std::string_view text, std::size_t nvars, FieldPtr field) {
    return Parser(text, nvars, std::move(field)).run();
}

std::size_t infer_nvars(std::string_view text) {
    std::size_t best = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
        const std::string_view name = text.substr(start, i - start);
        if (name == "y") best = std::max<std::size_t>(best, 2);
        if (name == "z") best = std::max<std::size_t>(best, 3);
        if (name.size() > 1 && name.size() <= 7 && name[0] == 'x' &&
            name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
            std::size_t idx = 0;
            for (char d : name.substr(1)) idx = idx * 10 + static_cast<std::size_t>(d - '0');
            best = std::max(best, idx);
        }
    }
    return best;
}

}  // namespace ffx
