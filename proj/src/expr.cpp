#include "sumset/expr.hpp"

#include "sumset/errors.hpp"

#include <cctype>

namespace sumset {

namespace {

struct Token {
    enum Kind { Number, Ident, Punct, End } kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    Lexer(const std::string& s, int line, int column) : s_(s), line_(line), col_(column) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (i_ >= s_.size()) {
                out.push_back({Token::End, "", line_, col_});
                return out;
            }
            const char c = s_[i_];
            const int l = line_, k = col_;
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                ((c == '-' || c == '+') && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
                out.push_back({Token::Number, number(), l, k});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) id += take();
                out.push_back({Token::Ident, id, l, k});
            } else if (std::string("(){}[],:").find(c) != std::string::npos) {
                out.push_back({Token::Punct, std::string(1, take()), l, k});
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", l, k);
            }
        }
    }

private:
    char take() {
        const char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) take();
    }
    bool digit() const { return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])); }
    std::string digits() {
        std::string d;
        while (digit()) d += take();
        return d;
    }
    std::string number() {
        std::string t;
        if (s_[i_] == '-' || s_[i_] == '+') t += take();
        t += digits();
        if (i_ < s_.size() && s_[i_] == '.') {
            t += take();
            t += digits();
        }
        if (i_ + 1 < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E') &&
            (std::isdigit(static_cast<unsigned char>(s_[i_ + 1])) || s_[i_ + 1] == '-' || s_[i_ + 1] == '+')) {
            t += take();
            if (s_[i_] == '-' || s_[i_] == '+') t += take();
            t += digits();
        }
        if (i_ + 1 < s_.size() && s_[i_] == '/' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
            t += take();
            t += digits();
        }
        return t;
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_;
    int col_;
};

class AstParser {
public:
    explicit AstParser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Ast top() {
        Ast a = value();
        if (peek().kind != Token::End) fail("trailing input '" + peek().text + "'");
        return a;
    }

private:
    const Token& peek() const { return t_[p_]; }
    bool is(const char* punct) const { return peek().kind == Token::Punct && peek().text == punct; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
    void expect(const char* punct) {
        if (!is(punct)) fail(std::string("expected '") + punct + "'" + (peek().kind == Token::End ? " at end of input" : ", found '" + peek().text + "'"));
        ++p_;
    }

    std::vector<Ast> list(const char* close) {
        std::vector<Ast> out;
        if (is(close)) {
            ++p_;
            return out;
        }
        for (;;) {
            out.push_back(value());
            if (is(",")) {
                ++p_;
                continue;
            }
            expect(close);
            return out;
        }
    }

    Ast value() {
        Ast a = primary();
        if (is(":")) {
            ++p_;
            Ast b = primary();
            Ast pair{Ast::Type::Pair, "", {std::move(a), std::move(b)}, a.line, a.column};
            pair.line = pair.kids[0].line;
            pair.column = pair.kids[0].column;
            return pair;
        }
        return a;
    }

    Ast primary() {
        const Token tok = peek();
        Ast a{Ast::Type::Number, tok.text, {}, tok.line, tok.column};
        switch (tok.kind) {
        case Token::Number: ++p_; return a;
        case Token::Ident:
            ++p_;
            if (is("(")) {
                ++p_;
                a.type = Ast::Type::Call;
                a.kids = list(")");
            } else {
                a.type = Ast::Type::Ident;
            }
            return a;
        case Token::Punct:
            ++p_;
            if (tok.text == "(") {
                a.type = Ast::Type::Tuple;
                a.kids = list(")");
                return a;
            }
            if (tok.text == "{") {
                a.type = Ast::Type::Brace;
                a.kids = list("}");
                return a;
            }
            if (tok.text == "[") {
                a.type = Ast::Type::Bracket;
                a.kids = list("]");
                if (peek().kind == Token::Ident && peek().text == "x" && t_[p_ + 1].kind == Token::Punct && t_[p_ + 1].text == "[") {
                    Ast prod{Ast::Type::WindowProduct, "", {std::move(a)}, tok.line, tok.column};
                    while (peek().kind == Token::Ident && peek().text == "x") {
                        p_ += 2;
                        Ast f{Ast::Type::Bracket, "", list("]"), t_[p_ - 1].line, t_[p_ - 1].column};
                        prod.kids.push_back(std::move(f));
                    }
                    return prod;
                }
                return a;
            }
            --p_;
            fail("unexpected '" + tok.text + "'");
        case Token::End: fail("unexpected end of input");
        }
        fail("unreachable");
    }

    std::vector<Token> t_;
    std::size_t p_ = 0;
};

[[noreturn]] void bad(const Ast& a, const std::string& msg) { throw ParseError(msg, a.line, a.column); }

void arity(const Ast& a, std::size_t lo, std::size_t hi) {
    if (a.kids.size() < lo || a.kids.size() > hi) {
        bad(a, a.text + "() takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                   " arguments, got " + std::to_string(a.kids.size()));
    }
}

Side ast_to_side(const Ast& a) {
    if (a.type == Ast::Type::Ident && a.text == "left") return Side::Left;
    if (a.type == Ast::Type::Ident && a.text == "right") return Side::Right;
    bad(a, "expected left or right, got " + describe(a));
}

Frequency ast_to_frequency(const Ast& a) {
    if (a.type == Ast::Type::Ident && a.text == "golden") return Frequency::golden();
    if (a.type == Ast::Type::Call && a.text == "approx") {
        arity(a, 1, 2);
        const int digits = a.kids.size() == 2 ? static_cast<int>(to_i64_or_throw(ast_to_int(a.kids[1]), "approx digits")) : 12;
        try {
            return Frequency::approx(ast_to_rational(a.kids[0]), digits);
        } catch (const ParseError&) {
            throw;
        } catch (const ContractError& e) {
            bad(a, e.what());
        }
    }
    return Frequency::exact(ast_to_rational(a));
}

std::optional<Int> optional_n(const Ast& a) {
    arity(a, 0, 1);
    if (a.kids.empty()) return std::nullopt;
    return ast_to_int(a.kids[0]);
}

ElemSet dilation_set(const Ast& a, const GroupSpec& g) {
    if (a.type == Ast::Type::Call && (a.text == "ball" || a.text == "box")) {
        arity(a, 1, 1);
        const Int r = ast_to_int(a.kids[0]);
        if (r < 0 || r > 1000) bad(a, "ball radius must be in [0,1000]");
        const auto ri = static_cast<std::uint64_t>(*to_i64(r));
        return a.text == "ball" ? ball(g, ri) : anchored_box(g, ri);
    }
    return ast_to_elems(a, g);
}

DescribedSet build_set(const Ast& a, const GroupSpec& g, const SetTable* names) {
    if (a.type == Ast::Type::Ident) {
        if (names) {
            auto it = names->find(a.text);
            if (it != names->end()) {
                if (!(it->second.group() == g)) bad(a, "set '" + a.text + "' lives in another group");
                return it->second;
            }
        }
        bad(a, "unknown set '" + a.text + "'");
    }
    if (a.type != Ast::Type::Call) bad(a, "expected a set expression, got " + describe(a));
    const std::string& f = a.text;
    auto sub = [&](std::size_t i) { return build_set(a.kids[i], g, names); };

    if (f == "empty") {
        arity(a, 0, 0);
        return empty_set(g);
    }
    if (f == "all") {
        arity(a, 0, 0);
        return universe(g);
    }
    if (f == "explicit") {
        arity(a, 1, 1);
        return explicit_set(g, ast_to_elems(a.kids[0], g));
    }
    if (f == "periodic") {
        arity(a, 2, 2);
        std::vector<Int> m;
        const Ast& mk = a.kids[0];
        if (mk.type == Ast::Type::Tuple) {
            for (const auto& k : mk.kids) m.push_back(ast_to_int(k));
        } else {
            m.push_back(ast_to_int(mk));
        }
        return periodic(g, std::move(m), ast_to_elems(a.kids[1], g));
    }
    if (f == "random") {
        arity(a, 2, 2);
        const Int seed = ast_to_int(a.kids[1]);
        if (seed < 0 || seed > Int(std::numeric_limits<std::uint64_t>::max())) bad(a.kids[1], "seed must fit in 64 bits");
        return random_density(g, ast_to_rational(a.kids[0]), seed.convert_to<std::uint64_t>());
    }
    if (f == "bohr") {
        if (a.kids.size() < 2) bad(a, "bohr() needs a radius and at least one char(...)");
        std::vector<Character> chars;
        for (std::size_t i = 1; i < a.kids.size(); ++i) {
            const Ast& c = a.kids[i];
            if (c.type != Ast::Type::Call || c.text != "char") bad(c, "expected char(alpha, center)");
            arity(c, 1, 2);
            Character ch;
            if (c.kids[0].type == Ast::Type::Tuple) {
                for (const auto& k : c.kids[0].kids) ch.alpha.push_back(ast_to_frequency(k));
            } else {
                ch.alpha.push_back(ast_to_frequency(c.kids[0]));
            }
            if (ch.alpha.size() != g.dim()) bad(c, "character has " + std::to_string(ch.alpha.size()) + " frequencies, group dimension is " + std::to_string(g.dim()));
            ch.center = c.kids.size() == 2 ? ast_to_rational(c.kids[1]) : Rational(0);
            chars.push_back(std::move(ch));
        }
        return bohr_set(g, BohrSpec(std::move(chars), ast_to_rational(a.kids[0])));
    }
    if (f == "ip") {
        arity(a, 1, 1);
        const Ast& l = a.kids[0];
        if (l.type != Ast::Type::Bracket) bad(l, "ip() expects a bracketed generator list");
        std::vector<Elem> gens;
        for (const auto& k : l.kids) gens.push_back(ast_to_elem(k, g));
        return ip_set(g, std::move(gens));
    }
    if (f == "blocks_sq") {
        if (g.kind() != GroupKind::IntegerLine) bad(a, "blocks_sq() needs group Z");
        return block_set(BlockFamily::squares(optional_n(a)));
    }
    if (f == "blocks_dyadic") {
        if (g.kind() != GroupKind::IntegerLine) bad(a, "blocks_dyadic() needs group Z");
        return block_set(BlockFamily::dyadic(optional_n(a)));
    }
    if (f == "blocks_ball") return block_set(BlockFamily::balls(g, optional_n(a)));
    if (f == "heis_T") {
        if (g.kind() != GroupKind::HeisenbergZ) bad(a, "heis_T() needs group H3");
        arity(a, 1, 1);
        return block_set(BlockFamily::heisenberg_T(ast_to_int(a.kids[0])));
    }
    if (f == "blocks") {
        if (a.kids.size() < 2) bad(a, "blocks() needs a side and at least one window:translator");
        std::vector<std::pair<Window, Elem>> bl;
        for (std::size_t i = 1; i < a.kids.size(); ++i) {
            const Ast& p = a.kids[i];
            if (p.type != Ast::Type::Pair) bad(p, "expected window:translator");
            bl.emplace_back(ast_to_window(p.kids[0], g), ast_to_elem(p.kids[1], g));
        }
        return block_set(BlockFamily::explicit_blocks(g, ast_to_side(a.kids[0]), std::move(bl)));
    }
    if (f == "union" || f == "intersect") {
        if (a.kids.empty()) bad(a, f + "() needs at least one argument");
        std::vector<DescribedSet> parts;
        for (std::size_t i = 0; i < a.kids.size(); ++i) parts.push_back(sub(i));
        return f == "union" ? set_union(std::move(parts)) : set_intersection(std::move(parts));
    }
    if (f == "complement") {
        arity(a, 1, 1);
        return complement(sub(0));
    }
    if (f == "inverse") {
        arity(a, 1, 1);
        return inverse(sub(0));
    }
    if (f == "translate") {
        arity(a, 2, 3);
        const Side side = a.kids.size() == 3 ? ast_to_side(a.kids[2]) : Side::Right;
        return translate(sub(0), ast_to_elem(a.kids[1], g), side);
    }
    if (f == "dilate") {
        arity(a, 2, 2);
        return dilate(sub(0), dilation_set(a.kids[1], g));
    }
    if (f == "product") {
        arity(a, 4, 4);
        return product(sub(0), sub(1), ast_to_window(a.kids[2], g), ast_to_window(a.kids[3], g));
    }
    bad(a, "unknown set constructor '" + f + "'");
}

} // namespace

Ast parse_ast(const std::string& text, int line, int column) {
    return AstParser(Lexer(text, line, column).run()).top();
}

std::string describe(const Ast& a) {
    switch (a.type) {
    case Ast::Type::Number: return "number " + a.text;
    case Ast::Type::Ident: return "identifier " + a.text;
    case Ast::Type::Call: return "call " + a.text + "(...)";
    case Ast::Type::Tuple: return "tuple";
    case Ast::Type::Brace: return "{...} list";
    case Ast::Type::Bracket: return "[...] list";
    case Ast::Type::WindowProduct: return "window";
    case Ast::Type::Pair: return "pair";
    }
    return "value";
}

Rational ast_to_rational(const Ast& a) {
    if (a.type != Ast::Type::Number) bad(a, "expected a number, got " + describe(a));
    try {
        return parse_rational(a.text);
    } catch (const ContractError& e) {
        bad(a, e.what());
    }
}

Int ast_to_int(const Ast& a) {
    const Rational r = ast_to_rational(a);
    if (boost::multiprecision::denominator(r) != 1) bad(a, "expected an integer, got " + a.text);
    return boost::multiprecision::numerator(r);
}

Elem ast_to_elem(const Ast& a, const GroupSpec& g) {
    Elem e;
    if (a.type == Ast::Type::Number) {
        e.push_back(ast_to_int(a));
    } else if (a.type == Ast::Type::Tuple) {
        for (const auto& k : a.kids) e.push_back(ast_to_int(k));
    } else {
        bad(a, "expected a group element, got " + describe(a));
    }
    if (e.size() != g.dim()) bad(a, "element has " + std::to_string(e.size()) + " coordinates, group " + g.name() + " needs " + std::to_string(g.dim()));
    return e;
}

ElemSet ast_to_elems(const Ast& a, const GroupSpec& g) {
    if (a.type != Ast::Type::Brace && a.type != Ast::Type::Bracket) bad(a, "expected an element list {...}, got " + describe(a));
    ElemSet out;
    for (const auto& k : a.kids) out.push_back(ast_to_elem(k, g));
    normalize(out);
    return out;
}

Window ast_to_window(const Ast& a, const GroupSpec& g) {
    std::vector<const Ast*> factors;
    if (a.type == Ast::Type::Bracket) {
        factors.push_back(&a);
    } else if (a.type == Ast::Type::WindowProduct) {
        for (const auto& k : a.kids) factors.push_back(&k);
    } else {
        bad(a, "expected a window [a,b]x..., got " + describe(a));
    }
    std::vector<Interval> iv;
    for (const Ast* f : factors) {
        if (f->kids.size() != 2) bad(*f, "window factor needs exactly two bounds");
        Interval i{ast_to_int(f->kids[0]), ast_to_int(f->kids[1])};
        if (i.lo > i.hi) bad(*f, "empty window factor");
        iv.push_back(std::move(i));
    }
    if (iv.size() != g.dim()) bad(a, "window has dimension " + std::to_string(iv.size()) + ", group " + g.name() + " needs " + std::to_string(g.dim()));
    return Window(std::move(iv));
}

DescribedSet ast_to_set(const Ast& a, const GroupSpec& g, const SetTable* names) {
    try {
        return build_set(a, g, names);
    } catch (const ParseError&) {
        throw;
    } catch (const ContractError& e) {
        throw ParseError(e.what(), a.line, a.column);
    }
}

DescribedSet parse_set(const std::string& text, const GroupSpec& g, const SetTable* names) {
    return ast_to_set(parse_ast(text), g, names);
}

Elem parse_elem(const std::string& text, const GroupSpec& g) { return ast_to_elem(parse_ast(text), g); }

Window parse_window(const std::string& text, const GroupSpec& g) { return ast_to_window(parse_ast(text), g); }

} // namespace sumset
