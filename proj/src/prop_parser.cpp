// SPDX-License-Identifier: Apache-2.0
//
// Lexer and recursive-descent parser for the property language.
//
// Precedence, loosest to tightest (implication is right-associative, the
// other binary operators are left-associative, relations do not chain):
//   ->   ||   &&   !   == != < <= > >= = in   + -   * /   unary-   postfix ' #

#include <cctype>
#include <cstdlib>

#include "fsmrv/common.hpp"
#include "fsmrv/prop/ast.hpp"

namespace fsmrv {

namespace {

enum class tok {
    end, num_int, num_real, str, ident,
    lparen, rparen, lbracket, rbracket, lbrace, rbrace,
    comma, colon, prime, hash,
    arrow, oror, andand, bang,
    eqeq, neq, le, ge, lt, gt, assign,
    plus, minus, star, slash,
    leadsto  // ~~>
};

struct token {
    tok t = tok::end;
    std::string text;
    int64_t ival = 0;
    double rval = 0;
    size_t pos = 0;
};

class lexer {
  public:
    lexer(const std::string& src, const std::string& where) : src_(src), where_(where) {
        advance();
    }

    const token& cur() const { return cur_; }

    void advance() {
        skip_ws();
        cur_ = token{};
        cur_.pos = i_;
        if (i_ >= src_.size()) {
            cur_.t = tok::end;
            return;
        }
        char c = src_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            return;
        }
        if (c == '"') {
            lex_string();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                j++;
            cur_.t = tok::ident;
            cur_.text = src_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && i_ + 1 < src_.size() && src_[i_ + 1] == b;
        };
        if (two('~', '~') && i_ + 2 < src_.size() && src_[i_ + 2] == '>') {
            cur_.t = tok::leadsto;
            i_ += 3;
            return;
        }
        if (two('-', '>')) { cur_.t = tok::arrow; i_ += 2; return; }
        if (two('|', '|')) { cur_.t = tok::oror; i_ += 2; return; }
        if (two('&', '&')) { cur_.t = tok::andand; i_ += 2; return; }
        if (two('=', '=')) { cur_.t = tok::eqeq; i_ += 2; return; }
        if (two('!', '=')) { cur_.t = tok::neq; i_ += 2; return; }
        if (two('<', '=')) { cur_.t = tok::le; i_ += 2; return; }
        if (two('>', '=')) { cur_.t = tok::ge; i_ += 2; return; }
        switch (c) {
            case '(': cur_.t = tok::lparen; break;
            case ')': cur_.t = tok::rparen; break;
            case '[': cur_.t = tok::lbracket; break;
            case ']': cur_.t = tok::rbracket; break;
            case '{': cur_.t = tok::lbrace; break;
            case '}': cur_.t = tok::rbrace; break;
            case ',': cur_.t = tok::comma; break;
            case ':': cur_.t = tok::colon; break;
            case '\'': cur_.t = tok::prime; break;
            case '#': cur_.t = tok::hash; break;
            case '!': cur_.t = tok::bang; break;
            case '<': cur_.t = tok::lt; break;
            case '>': cur_.t = tok::gt; break;
            case '=': cur_.t = tok::assign; break;
            case '+': cur_.t = tok::plus; break;
            case '-': cur_.t = tok::minus; break;
            case '*': cur_.t = tok::star; break;
            case '/': cur_.t = tok::slash; break;
            default: fail("unexpected character '" + std::string(1, c) + "'", i_);
        }
        i_++;
    }

    [[noreturn]] void fail(const std::string& msg, size_t pos) const {
        std::string ctx = where_.empty() ? "" : where_ + ": ";
        throw parse_error(ctx + msg + " at column " + std::to_string(pos + 1) + " in \"" + src_ +
                          "\"");
    }

  private:
    void skip_ws() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) i_++;
    }

    void lex_number() {
        size_t j = i_;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) j++;
        bool real = false;
        if (j < src_.size() && src_[j] == '.' && j + 1 < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[j + 1]))) {
            real = true;
            j++;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) j++;
        }
        std::string text = src_.substr(i_, j - i_);
        if (real) {
            cur_.t = tok::num_real;
            cur_.rval = std::strtod(text.c_str(), nullptr);
        } else {
            cur_.t = tok::num_int;
            cur_.ival = std::stoll(text);
        }
        cur_.text = text;
        i_ = j;
    }

    void lex_string() {
        size_t j = i_ + 1;
        std::string out;
        while (j < src_.size() && src_[j] != '"') {
            if (src_[j] == '\\' && j + 1 < src_.size() &&
                (src_[j + 1] == '"' || src_[j + 1] == '\\')) {
                out += src_[j + 1];
                j += 2;
            } else {
                out += src_[j];
                j++;
            }
        }
        if (j >= src_.size()) fail("unterminated string literal", i_);
        cur_.t = tok::str;
        cur_.text = out;
        i_ = j + 1;
    }

    const std::string& src_;
    std::string where_;
    size_t i_ = 0;
    token cur_;
};

class parser {
  public:
    parser(const std::string& src, const std::string& where) : lx_(src, where) {}

    expr_ptr parse() {
        expr_ptr e = parse_implies();
        if (lx_.cur().t != tok::end) lx_.fail("trailing input after expression", lx_.cur().pos);
        return e;
    }

  private:
    bool at(tok t) const { return lx_.cur().t == t; }

    bool eat(tok t) {
        if (!at(t)) return false;
        lx_.advance();
        return true;
    }

    void expect(tok t, const char* what) {
        if (!eat(t)) lx_.fail(std::string("expected ") + what, lx_.cur().pos);
    }

    expr_ptr parse_implies() {
        expr_ptr a = parse_or();
        if (eat(tok::arrow)) return expr::make_bin(bin_op::implies, a, parse_implies());
        return a;
    }

    expr_ptr parse_or() {
        expr_ptr a = parse_and();
        while (eat(tok::oror)) a = expr::make_bin(bin_op::or_, a, parse_and());
        return a;
    }

    expr_ptr parse_and() {
        expr_ptr a = parse_not();
        while (eat(tok::andand)) a = expr::make_bin(bin_op::and_, a, parse_not());
        return a;
    }

    // '!' applies to a parenthesized expression, a variable, a temporal
    // operator, or another '!'. Anything else must be written with parens.
    expr_ptr parse_not() {
        if (eat(tok::bang)) return expr::make_not(parse_not_operand());
        return parse_rel();
    }

    expr_ptr parse_not_operand() {
        if (eat(tok::bang)) return expr::make_not(parse_not_operand());
        if (at(tok::lparen)) {
            lx_.advance();
            expr_ptr e = parse_implies();
            expect(tok::rparen, "')'");
            return e;
        }
        if (at(tok::ident)) {
            if (is_temporal_head()) return parse_primary();
            std::string name = lx_.cur().text;
            lx_.advance();
            bool primed = eat(tok::prime);
            return expr::make_var(name, primed);
        }
        lx_.fail("'!' expects a variable or a parenthesized expression", lx_.cur().pos);
    }

    expr_ptr parse_rel() {
        expr_ptr a = parse_sum();
        bin_op op;
        if (at(tok::eqeq) || at(tok::assign)) op = bin_op::eq;
        else if (at(tok::neq)) op = bin_op::ne;
        else if (at(tok::lt)) op = bin_op::lt;
        else if (at(tok::le)) op = bin_op::le;
        else if (at(tok::gt)) op = bin_op::gt;
        else if (at(tok::ge)) op = bin_op::ge;
        else if (at(tok::ident) && lx_.cur().text == "in") {
            lx_.advance();
            return expr::make_bin(bin_op::in, a, parse_list_expr());
        } else return a;
        lx_.advance();
        return expr::make_bin(op, a, parse_sum());
    }

    expr_ptr parse_sum() {
        expr_ptr a = parse_term();
        while (at(tok::plus) || at(tok::minus)) {
            bin_op op = at(tok::plus) ? bin_op::add : bin_op::sub;
            lx_.advance();
            a = expr::make_bin(op, a, parse_term());
        }
        return a;
    }

    expr_ptr parse_term() {
        expr_ptr a = parse_unary();
        while (at(tok::star) || at(tok::slash)) {
            bin_op op = at(tok::star) ? bin_op::mul : bin_op::div_;
            lx_.advance();
            a = expr::make_bin(op, a, parse_unary());
        }
        return a;
    }

    expr_ptr parse_unary() {
        if (eat(tok::minus)) {
            expr_ptr e = parse_unary();
            if (e->kind == expr::kind_t::lit && e->lit_val.tag() == value_tag::vt_int)
                return expr::make_lit(value(-e->lit_val.as_int()));
            if (e->kind == expr::kind_t::lit && e->lit_val.tag() == value_tag::vt_real)
                return expr::make_lit(value(-e->lit_val.as_real()));
            return expr::make_bin(bin_op::sub, expr::make_lit(value(int64_t{0})), e);
        }
        return parse_postfix();
    }

    expr_ptr parse_postfix() {
        expr_ptr e = parse_primary();
        for (;;) {
            if (at(tok::prime)) {
                if (e->kind != expr::kind_t::var || e->primed)
                    lx_.fail("prime (') applies to an unprimed variable", lx_.cur().pos);
                lx_.advance();
                e = expr::make_var(e->name, true);
            } else if (at(tok::hash)) {
                lx_.advance();
                if (!at(tok::ident))
                    lx_.fail("expected min, max, or size after '#'", lx_.cur().pos);
                std::string op = lx_.cur().text;
                lx_.advance();
                if (op == "min") e = expr::make_list_of(list_op::min, e);
                else if (op == "max") e = expr::make_list_of(list_op::max, e);
                else if (op == "size") e = expr::make_list_of(list_op::size, e);
                else lx_.fail("unknown list operator '#" + op + "'", lx_.cur().pos);
            } else {
                return e;
            }
        }
    }

    bool is_temporal_head() const {
        const std::string& t = lx_.cur().text;
        return t == "G" || t == "F" || t == "P";
    }

    expr_ptr parse_primary() {
        const token& c = lx_.cur();
        switch (c.t) {
            case tok::num_int: {
                int64_t v = c.ival;
                lx_.advance();
                return expr::make_lit(value(v));
            }
            case tok::num_real: {
                double v = c.rval;
                lx_.advance();
                return expr::make_lit(value(v));
            }
            case tok::str: {
                std::string s = c.text;
                lx_.advance();
                return expr::make_lit(value(std::move(s)));
            }
            case tok::lparen: {
                lx_.advance();
                expr_ptr e = parse_implies();
                expect(tok::rparen, "')'");
                return e;
            }
            case tok::lbrace: {
                lx_.advance();
                std::vector<expr_ptr> elems;
                if (!at(tok::rbrace)) {
                    do {
                        elems.push_back(parse_sum());
                    } while (eat(tok::comma));
                }
                expect(tok::rbrace, "'}'");
                return expr::make_list(std::move(elems));
            }
            case tok::ident: return parse_ident();
            default: lx_.fail("expected an expression", c.pos);
        }
    }

    expr_ptr parse_ident() {
        std::string name = lx_.cur().text;
        size_t pos = lx_.cur().pos;
        lx_.advance();
        if (name == "true") return expr::make_lit(value(true));
        if (name == "false") return expr::make_lit(value(false));
        if ((name == "G" || name == "F") && at(tok::lbracket)) {
            lx_.advance();
            expr_ptr body = parse_implies();
            expect(tok::rbracket, "']'");
            return name == "G" ? expr::make_g(body) : expr::make_f(body);
        }
        if (name == "P" && at(tok::lbracket)) {
            lx_.advance();
            expr_ptr f1 = parse_implies();
            expect(tok::leadsto, "'~~>'");
            expr_ptr f2 = parse_implies();
            expect(tok::leadsto, "'~~>'");
            expr_ptr f3 = parse_implies();
            expect(tok::rbracket, "']'");
            expr_ptr p = expr::make_p(f1, f2, f3);
            if (contains_primed(p))
                lx_.fail("primed variables are not allowed inside P[...]", pos);
            return p;
        }
        if ((name == "all" || name == "exists") && at(tok::lparen)) {
            lx_.advance();
            if (!at(tok::ident)) lx_.fail("expected iteration variable", lx_.cur().pos);
            std::string iter = lx_.cur().text;
            lx_.advance();
            expect(tok::comma, "','");
            expr_ptr lst = parse_list_expr();
            expect(tok::comma, "','");
            expr_ptr body = parse_implies();
            expect(tok::rparen, "')'");
            return expr::make_quant(name == "all", iter, lst, body);
        }
        bool primed = eat(tok::prime);
        return expr::make_var(std::move(name), primed);
    }

    // A list expression: list literal, list variable, or numeric range lo:hi
    // (inclusive lo, exclusive hi).
    expr_ptr parse_list_expr() {
        expr_ptr a = parse_sum();
        if (eat(tok::colon)) return expr::make_range(a, parse_sum());
        return a;
    }

    lexer lx_;
};

}  // namespace

expr_ptr parse_property(const std::string& text, const std::string& where) {
    return parser(text, where).parse();
}

}  // namespace fsmrv
