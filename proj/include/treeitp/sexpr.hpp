#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace treeitp {

struct SExpr {
    enum class Kind { Symbol, List };

    Kind kind = Kind::Symbol;
    std::string text;
    std::vector<SExpr> items;
    int line = 0;
    int column = 0;

    bool is_symbol() const { return kind == Kind::Symbol; }
    bool is_list() const { return kind == Kind::List; }
    bool is(std::string_view symbol) const { return is_symbol() && text == symbol; }
    // True for a list whose first item is the given symbol.
    bool headed(std::string_view symbol) const {
        return is_list() && !items.empty() && items[0].is(symbol);
    }
    std::string str() const;
};

// Reads every top-level expression; throws ParseError with line and column.
std::vector<SExpr> read_sexprs(std::string_view text);

}  // namespace treeitp
