#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "p2p/common/error.hpp"

namespace p2p::pddl {

// Lisp-style expression tree shared by the PDDL and ethical-rule readers.
struct SExpr {
    enum class Kind { List, Symbol, String };

    Kind kind = Kind::List;
    std::string text;  // symbol or decoded string contents
    std::vector<SExpr> items;
    SourceLocation location;

    bool is_list() const { return kind == Kind::List; }
    bool is_symbol() const { return kind == Kind::Symbol; }
    bool is_string() const { return kind == Kind::String; }
    // Case-insensitive match against a keyword.
    bool is_keyword(std::string_view keyword) const;
    // Lowercased head symbol of a list, or empty.
    std::string head() const;
};

// Reads every top-level form. ';' starts a comment running to end of line.
std::vector<SExpr> read_sexprs(std::string_view text);

// Convenience for inputs expected to hold a single form.
SExpr read_sexpr(std::string_view text);

}  // namespace p2p::pddl
