#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hmvol/error.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/lattice.hpp"

// expr  := term { "+" term }
// term  := [ INT "*" ] atom
// atom  := "U" [ "(" INT ")" ] | "E8" [ "(" INT ")" ] | "<" INT ">"
//        | "gram" "[" row { ";" row } "]" | "(" expr ")"
// row   := INT { "," INT }

namespace hmvol::expr {

struct Expr;

struct AtomU {
    Integer scale = 1;
};
struct AtomE8 {
    Integer scale = 1;
};
struct AtomRank1 {
    Integer value;
};
struct AtomGram {
    std::vector<std::vector<Integer>> rows;
};
struct AtomParen {
    std::shared_ptr<const Expr> inner;
};

using Atom = std::variant<AtomU, AtomE8, AtomRank1, AtomGram, AtomParen>;

struct Term {
    Integer multiplier = 1;
    bool explicit_multiplier = false;
    Atom atom;
    std::size_t offset = 0;  // byte offset of the term
};

struct Expr {
    std::vector<Term> terms;
    std::size_t offset = 0;
};

inline bool operator==(const Expr& a, const Expr& b);

inline bool operator==(const AtomU& a, const AtomU& b) { return a.scale == b.scale; }
inline bool operator==(const AtomE8& a, const AtomE8& b) { return a.scale == b.scale; }
inline bool operator==(const AtomRank1& a, const AtomRank1& b) { return a.value == b.value; }
inline bool operator==(const AtomGram& a, const AtomGram& b) { return a.rows == b.rows; }
inline bool operator==(const AtomParen& a, const AtomParen& b) { return *a.inner == *b.inner; }

/// Structural equality; offsets are ignored.
inline bool operator==(const Term& a, const Term& b) {
    return a.multiplier == b.multiplier && a.atom == b.atom;
}
inline bool operator==(const Expr& a, const Expr& b) { return a.terms == b.terms; }

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("expected '+' or end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::string found = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
        throw ParseError(what + ", found " + found, pos_);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool peek_keyword(std::string_view kw) {
        skip();
        if (s_.substr(pos_, kw.size()) != kw) return false;
        const std::size_t end = pos_ + kw.size();
        return end == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[end]));
    }

    bool at_int() {
        skip();
        std::size_t p = pos_;
        if (p < s_.size() && (s_[p] == '-' || s_[p] == '+')) ++p;
        return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]));
    }

    Integer integer() {
        if (!at_int()) fail("expected INT");
        const std::size_t start = pos_;
        if (s_[pos_] == '-' || s_[pos_] == '+') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string digits(s_.substr(start, pos_ - start));
        if (digits[0] == '+') digits.erase(0, 1);
        return Integer(digits);
    }

    Expr expr() {
        Expr e;
        skip();
        e.offset = pos_;
        e.terms.push_back(term());
        while (accept('+')) e.terms.push_back(term());
        return e;
    }

    Term term() {
        Term t;
        skip();
        t.offset = pos_;
        if (at_int()) {
            const std::size_t at = pos_;
            t.multiplier = integer();
            t.explicit_multiplier = true;
            if (t.multiplier < 1) {
                pos_ = at;
                fail("multiplier must be a positive INT");
            }
            expect('*');
        }
        t.atom = atom();
        return t;
    }

    Integer scale_suffix() {
        if (!accept('(')) return 1;
        skip();
        const std::size_t at = pos_;
        Integer k = integer();
        if (k == 0) {
            pos_ = at;
            fail("scale must be nonzero");
        }
        expect(')');
        return k;
    }

    Atom atom() {
        skip();
        if (peek_keyword("U")) {
            pos_ += 1;
            return AtomU{scale_suffix()};
        }
        if (peek_keyword("E8")) {
            pos_ += 2;
            return AtomE8{scale_suffix()};
        }
        if (peek_keyword("gram")) {
            pos_ += 4;
            return gram();
        }
        if (accept('<')) {
            skip();
            const std::size_t at = pos_;
            Integer k = integer();
            if (k == 0) {
                pos_ = at;
                fail("rank one lattice <0> is degenerate");
            }
            expect('>');
            return AtomRank1{k};
        }
        if (accept('(')) {
            auto inner = std::make_shared<Expr>(expr());
            expect(')');
            return AtomParen{std::move(inner)};
        }
        fail("expected one of INT, 'U', 'E8', '<', 'gram', '('");
    }

    AtomGram gram() {
        expect('[');
        skip();
        const std::size_t at = pos_;
        AtomGram g;
        do {
            std::vector<Integer> row;
            row.push_back(integer());
            while (accept(',')) row.push_back(integer());
            g.rows.push_back(std::move(row));
        } while (accept(';'));
        expect(']');
        const std::size_t n = g.rows.size();
        for (std::size_t i = 0; i < n; ++i)
            if (g.rows[i].size() != n)
                throw ParseError("gram literal is not square: row " + std::to_string(i) + " has " +
                                     std::to_string(g.rows[i].size()) + " entries, expected " + std::to_string(n),
                                 at);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (g.rows[i][j] != g.rows[j][i])
                    throw ParseError("gram literal is not symmetric at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")",
                                     at);
        return g;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string render(const Expr& e);

inline std::string render_scale(const Integer& k) { return k == 1 ? "" : "(" + k.get_str() + ")"; }

inline std::string render(const Atom& a) {
    struct Visitor {
        std::string operator()(const AtomU& x) const { return "U" + render_scale(x.scale); }
        std::string operator()(const AtomE8& x) const { return "E8" + render_scale(x.scale); }
        std::string operator()(const AtomRank1& x) const { return "<" + x.value.get_str() + ">"; }
        std::string operator()(const AtomGram& x) const {
            std::string s = "gram[";
            for (std::size_t i = 0; i < x.rows.size(); ++i) {
                if (i) s += ";";
                for (std::size_t j = 0; j < x.rows[i].size(); ++j) s += (j ? "," : "") + x.rows[i][j].get_str();
            }
            return s + "]";
        }
        std::string operator()(const AtomParen& x) const { return "(" + render(*x.inner) + ")"; }
    };
    return std::visit(Visitor{}, a);
}

/// Canonical text; multipliers of 1 are dropped.
inline std::string render(const Expr& e) {
    std::string s;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        if (i) s += " + ";
        const Term& t = e.terms[i];
        if (t.multiplier != 1) s += t.multiplier.get_str() + "*";
        s += render(t.atom);
    }
    return s;
}

inline Lattice evaluate(const Expr& e);

inline Lattice evaluate(const Atom& a) {
    struct Visitor {
        Lattice operator()(const AtomU& x) const { return construct(LatticeKind::U, x.scale); }
        Lattice operator()(const AtomE8& x) const { return construct(LatticeKind::E8, x.scale); }
        Lattice operator()(const AtomRank1& x) const { return construct(LatticeKind::Rank1, 1, x.value); }
        Lattice operator()(const AtomGram& x) const { return construct(LatticeKind::Gram, 1, 1, x.rows); }
        Lattice operator()(const AtomParen& x) const { return evaluate(*x.inner); }
    };
    return std::visit(Visitor{}, a);
}

inline Lattice evaluate(const Expr& e) {
    std::optional<Lattice> out;
    for (const Term& t : e.terms) {
        if (t.multiplier > static_cast<long>(kMaxRank))
            throw PreconditionError("multiplier " + t.multiplier.get_str() + " exceeds the rank cap");
        const Lattice piece = repeat(evaluate(t.atom), static_cast<int>(t.multiplier.get_si()));
        if (out && out->rank() + piece.rank() > kMaxRank)
            throw PreconditionError("lattice rank exceeds the cap of " + std::to_string(kMaxRank));
        out = out ? direct_sum(*out, piece) : piece;
    }
    return *out;
}

inline Lattice parse_lattice(std::string_view text) { return evaluate(parse(text)); }

}  // namespace hmvol::expr
