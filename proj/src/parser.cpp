#include "qml/parser.hpp"

#include "qml/errors.hpp"

#include <vector>

namespace qml {

namespace {

enum class Tok { Atom, And, Or, Not, Box, Diamond, LParen, RParen, Comma, Turnstile, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool is_atom_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_atom_char(char c) { return is_atom_start(c) || (c >= '0' && c <= '9') || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_atom_start(c)) {
            while (i < text.size() && is_atom_char(text[i]))
                ++i;
            out.push_back({Tok::Atom, std::string{text.substr(start, i - start)}, start});
            continue;
        }
        auto two = text.substr(i, 2);
        if (two == "|-") {
            out.push_back({Tok::Turnstile, "|-", start});
            i += 2;
        } else if (two == "[]") {
            out.push_back({Tok::Box, "[]", start});
            i += 2;
        } else if (two == "<>") {
            out.push_back({Tok::Diamond, "<>", start});
            i += 2;
        } else {
            Tok kind;
            switch (c) {
            case '&': kind = Tok::And; break;
            case '|': kind = Tok::Or; break;
            case '~':
            case '!': kind = Tok::Not; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            default:
                throw ParseError{"unknown token '" + std::string{c} + "'", start};
            }
            out.push_back({kind, std::string{c}, start});
            ++i;
        }
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

std::string describe(const Token& t)
{
    return t.kind == Tok::End ? std::string{"end of input"} : "'" + t.text + "'";
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_{tokenize(text)} {}

    Formula formula_only()
    {
        Formula f = formula();
        expect_end();
        return f;
    }

    Sequent sequent()
    {
        Sequent seq;
        if (peek().kind != Tok::Turnstile)
            formulas(seq.antecedent);
        if (peek().kind != Tok::Turnstile)
            fail("expected '|-'");
        advance();
        if (peek().kind != Tok::End)
            formulas(seq.succedent);
        expect_end();
        return seq;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError{what + ", found " + describe(peek()), peek().pos};
    }

    void expect_end() const
    {
        if (peek().kind != Tok::End)
            fail("unexpected trailing input");
    }

    void formulas(FormulaSet& out)
    {
        out.insert(formula());
        while (peek().kind == Tok::Comma) {
            advance();
            out.insert(formula());
        }
    }

    Formula formula()
    {
        Formula f = conj();
        while (peek().kind == Tok::Or) {
            advance();
            f = Formula::disjunction(f, conj());
        }
        return f;
    }

    Formula conj()
    {
        Formula f = unary();
        while (peek().kind == Tok::And) {
            advance();
            f = Formula::conjunction(f, unary());
        }
        return f;
    }

    Formula unary()
    {
        switch (peek().kind) {
        case Tok::Not:
            advance();
            return Formula::negation(unary());
        case Tok::Box:
            advance();
            return Formula::box(unary());
        case Tok::Diamond:
            advance();
            return Formula::diamond(unary());
        case Tok::Atom:
            return Formula::atom(advance().text);
        case Tok::LParen: {
            advance();
            Formula f = formula();
            if (peek().kind != Tok::RParen)
                fail("expected ')'");
            advance();
            return f;
        }
        default:
            fail("expected a formula");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

Formula parse(std::string_view text) { return Parser{text}.formula_only(); }

Sequent parse_sequent(std::string_view text) { return Parser{text}.sequent(); }

} // namespace qml
