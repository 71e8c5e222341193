#pragma once

#include "resbound/parser.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace resbound::detail {

enum class Tok { ident, number, op, separator, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            if (c == '\n' || c == ';') {
                out.push_back(make(Tok::separator, std::string(1, c)));
                advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                Token t = make(Tok::ident, "");
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += src_[pos_];
                    advance();
                }
                out.push_back(std::move(t));
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                Token t = make(Tok::number, "");
                while (pos_ < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                    t.text += src_[pos_];
                    advance();
                }
                // Scientific notation marks a decimal literal as well.
                if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E') && pos_ + 1 < src_.size() &&
                    (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '-' ||
                     src_[pos_ + 1] == '+')) {
                    t.text += src_[pos_];
                    advance();
                    t.text += src_[pos_];
                    advance();
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        t.text += src_[pos_];
                        advance();
                    }
                }
                out.push_back(std::move(t));
                continue;
            }
            if (std::string_view("+-*/^(),=[]").find(c) != std::string_view::npos) {
                out.push_back(make(Tok::op, std::string(1, c)));
                advance();
                continue;
            }
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        out.push_back(make(Tok::end, ""));
        return out;
    }

private:
    Token make(Tok k, std::string text) const { return Token{k, std::move(text), line_, col_}; }
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace resbound::detail
