#include <cctype>

#include "treeitp/errors.hpp"
#include "treeitp/sexpr.hpp"

namespace treeitp {

std::string SExpr::str() const {
    if (is_symbol())
        return text;
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += ' ';
        out += items[i].str();
    }
    return out + ")";
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::vector<SExpr> read_all() {
        std::vector<SExpr> out;
        skip_space();
        while (pos_ < text_.size()) {
            out.push_back(read());
            skip_space();
        }
        return out;
    }

private:
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == ';') {
                while (pos_ < text_.size() && peek() != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        SExpr e;
        e.line = line_;
        e.column = column_;
        char c = peek();
        if (c == ')')
            throw ParseError("unexpected ')'", line_, column_);
        if (c == '(') {
            e.kind = SExpr::Kind::List;
            advance();
            skip_space();
            while (true) {
                if (pos_ >= text_.size())
                    throw ParseError("unexpected end of input, missing ')'", line_, column_);
                if (peek() == ')') {
                    advance();
                    break;
                }
                e.items.push_back(read());
                skip_space();
            }
            return e;
        }
        if (c == '|') {
            advance();
            while (pos_ < text_.size() && peek() != '|') {
                e.text += peek();
                advance();
            }
            if (pos_ >= text_.size())
                throw ParseError("unterminated quoted symbol", line_, column_);
            advance();
            return e;
        }
        while (pos_ < text_.size()) {
            c = peek();
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';')
                break;
            e.text += c;
            advance();
        }
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) {
    return Reader(text).read_all();
}

}  // namespace treeitp
