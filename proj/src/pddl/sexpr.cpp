#include "p2p/pddl/sexpr.hpp"

#include <cctype>

#include "p2p/common/text.hpp"

namespace p2p::pddl {

bool SExpr::is_keyword(std::string_view keyword) const {
    return kind == Kind::Symbol && text::iequals(text, keyword);
}

std::string SExpr::head() const {
    if (kind != Kind::List || items.empty() || !items.front().is_symbol()) return {};
    return text::to_lower(items.front().text);
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::vector<SExpr> read_all() {
        std::vector<SExpr> forms;
        skip_space();
        while (pos_ < text_.size()) {
            forms.push_back(read_one());
            skip_space();
        }
        return forms;
    }

private:
    SourceLocation here() const { return {line_, column_}; }

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
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read_one() {
        SExpr node;
        node.location = here();
        char c = text_[pos_];
        if (c == ')') throw Error(ErrorKind::Syntax, "unexpected ')'", here());
        if (c == '(') {
            advance();
            node.kind = SExpr::Kind::List;
            skip_space();
            while (true) {
                if (pos_ >= text_.size())
                    throw Error(ErrorKind::Syntax, "unterminated list opened here", node.location);
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                node.items.push_back(read_one());
                skip_space();
            }
            return node;
        }
        if (c == '"') {
            advance();
            node.kind = SExpr::Kind::String;
            while (true) {
                if (pos_ >= text_.size())
                    throw Error(ErrorKind::Syntax, "unterminated string", node.location);
                char s = text_[pos_];
                if (s == '"') {
                    advance();
                    break;
                }
                if (s == '\\') {
                    advance();
                    if (pos_ >= text_.size())
                        throw Error(ErrorKind::Syntax, "unterminated string", node.location);
                    s = text_[pos_];
                    if (s == 'n') s = '\n';
                }
                node.text += s;
                advance();
            }
            return node;
        }
        node.kind = SExpr::Kind::Symbol;
        while (pos_ < text_.size()) {
            char s = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(s)) || s == '(' || s == ')' || s == ';' || s == '"')
                break;
            node.text += s;
            advance();
        }
        return node;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

SExpr read_sexpr(std::string_view text) {
    auto forms = read_sexprs(text);
    if (forms.empty()) throw Error(ErrorKind::Syntax, "empty input", SourceLocation{1, 1});
    if (forms.size() > 1) throw Error(ErrorKind::Syntax, "trailing input after expression", forms[1].location);
    return std::move(forms.front());
}

}  // namespace p2p::pddl
