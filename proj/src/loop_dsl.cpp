// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/loop_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pam/query.hpp"

namespace pam {

namespace {

struct Token {
    enum class Kind { word, number, assign, semi, neq, lt, lbrace, rbrace, star, plus, minus,
                      end };
    Kind kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++col_;
                ++pos_;
            } else if (ch == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        int line = line_, col = col_;
        if (pos_ >= text_.size()) {
            cur_ = {Token::Kind::end, "", line, col};
            return;
        }
        char ch = text_[pos_];
        auto two = [&](char a, char b) {
            return ch == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (two(':', '=')) {
            cur_ = {Token::Kind::assign, ":=", line, col};
            pos_ += 2;
            col_ += 2;
            return;
        }
        if (two('!', '=')) {
            cur_ = {Token::Kind::neq, "!=", line, col};
            pos_ += 2;
            col_ += 2;
            return;
        }
        auto single = [&](Token::Kind k) {
            cur_ = {k, std::string(1, ch), line, col};
            ++pos_;
            ++col_;
        };
        switch (ch) {
            case ';': single(Token::Kind::semi); return;
            case '<': single(Token::Kind::lt); return;
            case '{': single(Token::Kind::lbrace); return;
            case '}': single(Token::Kind::rbrace); return;
            case '*': single(Token::Kind::star); return;
            case '+': single(Token::Kind::plus); return;
            case '-': single(Token::Kind::minus); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '/' || text_[pos_] == '.'))
                ++pos_;
            cur_ = {Token::Kind::number, text_.substr(start, pos_ - start), line, col};
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            cur_ = {Token::Kind::word, text_.substr(start, pos_ - start), line, col};
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + ch + "'", line, col);
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_{Token::Kind::end, "", 1, 1};
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    LoopProgram parse() {
        LoopProgram prog;
        prog.source_line = lex_.peek().line;
        expect_word("x");
        expect(Token::Kind::assign, ":=");
        prog.x0 = rational();
        expect(Token::Kind::semi, ";");
        expect_word("while");
        expect_word("x");
        expect(Token::Kind::neq, "!=");
        prog.target = rational();
        expect(Token::Kind::lbrace, "{");
        expect_word("if");
        expect_word("x");
        expect(Token::Kind::lt, "<");
        prog.guard = rational();
        expect(Token::Kind::lbrace, "{");
        prog.branch_lt = assignment();
        expect(Token::Kind::rbrace, "}");
        expect_word("else");
        expect(Token::Kind::lbrace, "{");
        prog.branch_ge = assignment();
        expect(Token::Kind::rbrace, "}");
        expect(Token::Kind::rbrace, "}");
        if (lex_.peek().kind != Token::Kind::end)
            throw SyntaxError("trailing input after the program", lex_.peek().line,
                              lex_.peek().column);
        return prog;
    }

  private:
    void expect(Token::Kind kind, const std::string& what) {
        Token t = lex_.take();
        if (t.kind != kind)
            throw SyntaxError("expected '" + what + "', found '" + t.text + "'", t.line,
                              t.column);
    }
    void expect_word(const std::string& w) {
        Token t = lex_.take();
        if (t.kind != Token::Kind::word || t.text != w)
            throw SyntaxError("expected '" + w + "', found '" + t.text + "'", t.line, t.column);
    }

    Rational number_token(const Token& t) {
        try {
            return Rational::parse(t.text);
        } catch (const Error&) {
            throw NonRationalLiteral("literal '" + t.text + "' at line " +
                                     std::to_string(t.line) + " is not an exact rational");
        }
    }

    Rational rational() {
        int sign = 1;
        while (lex_.peek().kind == Token::Kind::plus || lex_.peek().kind == Token::Kind::minus) {
            if (lex_.take().kind == Token::Kind::minus) sign = -sign;
        }
        Token t = lex_.take();
        if (t.kind != Token::Kind::number)
            throw SyntaxError("expected a rational literal, found '" + t.text + "'", t.line,
                              t.column);
        Rational r = number_token(t);
        return sign < 0 ? -r : r;
    }

    // assign := "x" ":=" rat "*" "x" (+|-) rat | "x" ":=" "x" (+|-) rat | "x" ":=" rat
    AffineMap assignment() {
        expect_word("x");
        expect(Token::Kind::assign, ":=");
        if (lex_.peek().kind == Token::Kind::word) {
            // x := x (+|-) rat
            expect_word("x");
            Rational b = signed_tail();
            return AffineMap(Rational(1), b);
        }
        Rational first = rational();
        if (lex_.peek().kind == Token::Kind::star) {
            lex_.take();
            expect_word("x");
            Rational b = signed_tail();
            return AffineMap(first, b);
        }
        return AffineMap(Rational(0), first);
    }

    Rational signed_tail() {
        Token op = lex_.take();
        if (op.kind != Token::Kind::plus && op.kind != Token::Kind::minus)
            throw SyntaxError("expected '+' or '-', found '" + op.text + "'", op.line,
                              op.column);
        Rational r = rational();
        return op.kind == Token::Kind::minus ? -r : r;
    }

    Lexer lex_;
};

}  // namespace

LoopProgram parse_loop_program(const std::string& text) { return Parser(text).parse(); }

namespace {

std::string print_assign(const AffineMap& m) {
    auto tail = [&](const Rational& b) {
        return b < Rational(0) ? " - " + (-b).to_string() : " + " + b.to_string();
    };
    if (m.a.is_zero()) return "x := " + m.b.to_string();
    if (m.a == Rational(1)) return "x := x" + tail(m.b);
    return "x := " + m.a.to_string() + " * x" + tail(m.b);
}

}  // namespace

std::string pretty_print(const LoopProgram& prog) {
    std::string s;
    s += "x := " + prog.x0.to_string() + ";\n";
    s += "while x != " + prog.target.to_string() + " {\n";
    s += "  if x < " + prog.guard.to_string() + " {\n";
    s += "    " + print_assign(prog.branch_lt) + "\n";
    s += "  } else {\n";
    s += "    " + print_assign(prog.branch_ge) + "\n";
    s += "  }\n";
    s += "}\n";
    return s;
}

Rational program_step(const LoopProgram& prog, const Rational& x) {
    return x < prog.guard ? prog.branch_lt(x) : prog.branch_ge(x);
}

namespace {

std::optional<Pam> try_carrier(const LoopProgram& prog, const Rational& lo, const Rational& hi) {
    if (!(lo < prog.guard && prog.guard < hi)) return std::nullopt;
    if (!(lo <= prog.x0 && prog.x0 < hi)) return std::nullopt;
    try {
        std::vector<Piece> pieces;
        pieces.push_back({Interval::closed_open(lo, prog.guard), prog.branch_lt});
        pieces.push_back({Interval::closed_open(prog.guard, hi), prog.branch_ge});
        return Pam(Interval::closed_open(lo, hi), std::move(pieces));
    } catch (const InvalidPam&) {
        return std::nullopt;
    }
}

// Can some carrier absorb the dynamics if the guard is allowed outside it
// (a single live branch)?
bool single_branch_carrier_exists(const LoopProgram& prog,
                                  const std::vector<Rational>& candidates) {
    for (const Rational& lo : candidates) {
        for (const Rational& hi : candidates) {
            if (!(lo < hi)) continue;
            if (!(lo <= prog.x0 && prog.x0 < hi)) continue;
            bool below = hi <= prog.guard;  // whole carrier uses the lt-branch
            bool above = lo >= prog.guard;
            if (!below && !above) continue;
            try {
                std::vector<Piece> pieces;
                pieces.push_back(
                    {Interval::closed_open(lo, hi), below ? prog.branch_lt : prog.branch_ge});
                Pam p(Interval::closed_open(lo, hi), std::move(pieces));
                return true;
            } catch (const InvalidPam&) {
            }
        }
    }
    return false;
}

}  // namespace

CompiledLoop compile_loop(const LoopProgram& prog) {
    // Candidate endpoints: the data of the program plus branch fixed points
    // and one-step images of the guard and of candidate ends.
    std::set<Rational> cand_set{Rational(0), Rational(1), prog.x0, prog.target, prog.guard,
                                prog.branch_lt(prog.guard), prog.branch_ge(prog.guard),
                                prog.branch_lt(Rational(0)), prog.branch_ge(Rational(1))};
    for (const AffineMap& m : {prog.branch_lt, prog.branch_ge}) {
        FixedPointResult fp = fixed_point(m);
        if (fp.kind == FixedPointResult::Kind::one) cand_set.insert(fp.value);
    }
    std::vector<Rational> candidates(cand_set.begin(), cand_set.end());

    struct Option {
        Rational lo, hi;
        bool with_target;
    };
    std::vector<Option> options;
    for (const Rational& lo : candidates)
        for (const Rational& hi : candidates) {
            if (!(lo < hi)) continue;
            bool with_target = lo <= prog.target && prog.target < hi;
            options.push_back({lo, hi, with_target});
        }
    std::stable_sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
        if (a.with_target != b.with_target) return a.with_target && !b.with_target;
        return a.hi - a.lo < b.hi - b.lo;
    });
    // Prefer the unit interval, then target-covering carriers by width.
    if (auto unit = try_carrier(prog, Rational(0), Rational(1))) {
        CompiledLoop out{*unit, prog.x0, prog.target,
                         Interval::closed_open(Rational(0), Rational(1)).contains(prog.target),
                         Transport{AffineMap(), AffineMap()}};
        return out;
    }
    for (const Option& o : options) {
        if (auto pam = try_carrier(prog, o.lo, o.hi)) {
            auto [unit, h] = rescale_to_unit(*pam);
            CompiledLoop out{unit, h.fwd(prog.x0), h.fwd(prog.target), o.with_target, h};
            return out;
        }
    }
    if (single_branch_carrier_exists(prog, candidates))
        throw GuardOutsideCarrier("every verified invariant interval leaves the guard outside");
    throw NotSelfMap("no invariant carrier interval could be verified for this program");
}

HaltingAnswer decide_halting(const LoopProgram& prog) {
    HaltingAnswer ans;
    if (prog.x0 == prog.target) {
        ans.kind = HaltingAnswer::Kind::halts;
        ans.steps = 0;
        ans.reason = "start equals target";
        return ans;
    }
    CompiledLoop compiled = compile_loop(prog);
    if (!compiled.target_in_carrier) {
        ans.kind = HaltingAnswer::Kind::diverges;
        ans.reason = "target lies outside the invariant carrier";
        return ans;
    }
    Decision d = reach(compiled.map, compiled.x0, compiled.target);
    ans.decision = d;
    switch (d.answer) {
        case Answer::yes:
            ans.kind = HaltingAnswer::Kind::halts;
            ans.steps = *d.witness;
            ans.reason = "reachability decided yes";
            break;
        case Answer::no:
            ans.kind = HaltingAnswer::Kind::diverges;
            ans.reason = "reachability decided no";
            break;
        case Answer::unknown:
            ans.kind = HaltingAnswer::Kind::unsupported;
            ans.reason = d.diagnostics.empty() ? "unsupported compiled shape"
                                               : d.diagnostics.front();
            break;
    }
    return ans;
}

}  // namespace pam
