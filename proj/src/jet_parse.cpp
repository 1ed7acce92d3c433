#include "geoflow/jet_parse.hpp"

#include "geoflow/error.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace geoflow::jet {

namespace {

// Marker parameters standing in for d_t, d_x, d_u while parsing; the leading
// control character keeps them out of the user's parameter namespace.
const std::string kMarkT = "\x01t", kMarkX = "\x01x", kMarkU = "\x01u";

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

[[noreturn]] void fail(int line, int col, const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const int l = line, cl = col;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '.') {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            std::string text(s.substr(i, j - i));
            if (text == ".") fail(l, cl, "malformed number");
            out.push_back({Tok::Number, text, l, cl});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Name, std::string(s.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        Tok k;
        std::size_t len = 1;
        switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*':
            if (i + 1 < s.size() && s[i + 1] == '*') {
                k = Tok::Caret;
                len = 2;
            } else {
                k = Tok::Star;
            }
            break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '=': k = Tok::Equals; break;
        default: fail(l, cl, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(s.substr(i, len)), l, cl});
        advance(len);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

Rational parse_number(const Token& tok) {
    const auto dot = tok.text.find('.');
    if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(tok.text));
    const std::string whole = tok.text.substr(0, dot), frac = tok.text.substr(dot + 1);
    boost::multiprecision::cpp_int num(whole.empty() ? "0" : whole), den = 1;
    for (char d : frac) {
        num = num * 10 + (d - '0');
        den *= 10;
    }
    return Rational(num, den);
}

class Parser {
public:
    Parser(std::vector<Token> toks, bool allow_fields) : toks_(std::move(toks)), fields_(allow_fields) {}

    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    void expect(Tok k, const char* what) {
        if (!accept(k)) fail(peek().line, peek().col, std::string("expected ") + what + describe(peek()));
    }
    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? " but the input ended" : " but found '" + t.text + "'";
    }
    bool at_end() const { return peek().kind == Tok::End; }
    std::size_t pos() const { return pos_; }
    void rewind(std::size_t p) { pos_ = p; }

    JetPoly sum() {
        JetPoly acc = product();
        for (;;) {
            if (accept(Tok::Plus)) acc += product();
            else if (accept(Tok::Minus)) acc -= product();
            else return acc;
        }
    }

private:
    JetPoly product() {
        JetPoly acc = unary();
        for (;;) {
            if (accept(Tok::Star)) {
                acc *= unary();
            } else if (peek().kind == Tok::Slash) {
                const Token op = take();
                const JetPoly d = unary();
                const auto c = d.constant_value();
                if (!c) fail(op.line, op.col, "division by a non-constant expression");
                if (*c == 0) fail(op.line, op.col, "division by zero");
                acc *= JetPoly(Rational(1) / *c);
            } else {
                return acc;
            }
        }
    }

    JetPoly unary() {
        if (accept(Tok::Minus)) return -unary();
        if (accept(Tok::Plus)) return unary();
        return power();
    }

    JetPoly power() {
        JetPoly base = atom();
        if (peek().kind == Tok::Caret) {
            const Token op = take();
            const Token& e = peek();
            if (e.kind != Tok::Number || e.text.find('.') != std::string::npos)
                fail(e.line, e.col, "exponent must be a nonnegative integer");
            take();
            const auto k = std::stoul(e.text);
            if (k > 64) fail(op.line, op.col, "exponent too large");
            base = base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    JetPoly atom() {
        const Token tok = take();
        switch (tok.kind) {
        case Tok::Number: return JetPoly(parse_number(tok));
        case Tok::LParen: {
            JetPoly inner = sum();
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::Name: return name(tok);
        default: fail(tok.line, tok.col, "expected a number, name or '('" + describe(tok));
        }
    }

    JetPoly name(const Token& tok) {
        const std::string& s = tok.text;
        if (s == "t") return JetPoly::t();
        if (s == "x") return JetPoly::x();
        if (s == "u") return JetPoly::u();
        if (s.rfind("d_", 0) == 0) {
            const std::string which = s.substr(2);
            if (which != "t" && which != "x" && which != "u")
                fail(tok.line, tok.col, "unknown basis field '" + s + "' (use d_t, d_x or d_u)");
            if (!fields_) fail(tok.line, tok.col, "'" + s + "' is only allowed in a vector field");
            return JetPoly::param(which == "t" ? kMarkT : which == "x" ? kMarkX : kMarkU);
        }
        if (s.rfind("u_", 0) == 0) {
            int nt = 0, nx = 0;
            for (std::size_t k = 2; k < s.size(); ++k) {
                if (s[k] == 't') ++nt;
                else if (s[k] == 'x') ++nx;
                else fail(tok.line, tok.col + static_cast<int>(k), "derivative index must be t or x in '" + s + "'");
            }
            if (nt + nx == 0) fail(tok.line, tok.col, "missing derivative index in '" + s + "'");
            if (nt + nx > 6) fail(tok.line, tok.col, "derivative order above 6 in '" + s + "'");
            return JetPoly::u(nt, nx);
        }
        if (s.front() == '_') fail(tok.line, tok.col, "names cannot start with '_'");
        return JetPoly::param(s);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool fields_;
};

void require_end(Parser& p) {
    const Token& t = p.peek();
    if (t.kind != Tok::End) fail(t.line, t.col, "unexpected '" + t.text + "'");
}

}  // namespace

JetPoly parse_poly(std::string_view text) {
    Parser p(lex(text), false);
    if (p.at_end()) fail(p.peek().line, p.peek().col, "empty expression");
    JetPoly r = p.sum();
    require_end(p);
    return r;
}

PdeForm parse_pde(std::string_view text) {
    Parser p(lex(text), false);
    if (p.at_end()) fail(p.peek().line, p.peek().col, "empty equation");
    JetPoly delta = p.sum();
    if (p.accept(Tok::Equals)) delta -= p.sum();
    require_end(p);
    if (delta.is_zero()) fail(1, 1, "equation is identically zero");
    try {
        return PdeForm(std::move(delta));
    } catch (const Error& e) {
        fail(1, 1, e.what());
    }
}

PointVectorField parse_generator(std::string_view text) {
    auto toks = lex(text);
    Parser p(toks, true);
    if (p.at_end()) fail(p.peek().line, p.peek().col, "empty vector field");
    // optional "name =" label
    if (toks.size() > 2 && toks[0].kind == Tok::Name && toks[1].kind == Tok::Equals) {
        p.take();
        p.take();
    }
    const Token start = p.peek();
    JetPoly expr = p.sum();
    require_end(p);
    JetPoly T, X, U;
    const JetVar mt = JetVar::param(kMarkT), mx = JetVar::param(kMarkX), mu = JetVar::param(kMarkU);
    for (const auto& [m, c] : expr.terms()) {
        const JetVar* which = nullptr;
        Monomial rest;
        for (const auto& [v, e] : m) {
            if (v == mt || v == mx || v == mu) {
                if (which || e != 1)
                    fail(start.line, start.col, "each term must contain exactly one of d_t, d_x, d_u to the first power");
                which = &v;
            } else {
                rest.emplace_back(v, e);
            }
        }
        if (!which) fail(start.line, start.col, "term without d_t, d_x or d_u");
        JetPoly piece = JetPoly::term(c, rest);
        (*which == mt ? T : *which == mx ? X : U) += piece;
    }
    try {
        return PointVectorField(T, X, U);
    } catch (const Error& e) {
        fail(start.line, start.col, e.what());
    }
}

}  // namespace geoflow::jet
