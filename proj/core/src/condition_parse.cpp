#include <cctype>
#include <charconv>

#include "holon/condition.hpp"
#include "holon/errors.hpp"

namespace holon::dsl {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

namespace {

enum class Tok {
    End,
    Ident,     // bare identifier or $var
    Keyword,   // and or not is in has true false null sensation
    AggWord,   // COUNT AVERAGE SUM
    TempWord,  // BEFORE AFTER DURING
    Str,
    Int,
    Dec,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    CmpSym,  // > < >= <= == !=
};

struct Token {
    Tok type{Tok::End};
    std::string text;
    std::int64_t int_val{0};
    double dec_val{0.0};
    int line{1};
    int col{1};
};

bool is_keyword(const std::string& s) {
    return s == "and" || s == "or" || s == "not" || s == "is" || s == "in" || s == "has" ||
           s == "true" || s == "false" || s == "null" || s == "sensation";
}
bool is_agg(const std::string& s) { return s == "COUNT" || s == "AVERAGE" || s == "SUM"; }
bool is_temporal(const std::string& s) { return s == "BEFORE" || s == "AFTER" || s == "DURING"; }

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            Token t;
            t.line = line_;
            t.col = col_;
            if (pos_ >= src_.size()) {
                t.type = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
                t.text = ident();
                if (is_keyword(t.text)) t.type = Tok::Keyword;
                else if (is_agg(t.text)) t.type = Tok::AggWord;
                else if (is_temporal(t.text)) t.type = Tok::TempWord;
                else t.type = Tok::Ident;
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '-' && pos_ + 1 < src_.size() &&
                        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                number(t);
            } else if (c == '"') {
                t.type = Tok::Str;
                t.text = string_lit();
            } else {
                switch (c) {
                case '(': t.type = Tok::LParen; advance(); break;
                case ')': t.type = Tok::RParen; advance(); break;
                case '[': t.type = Tok::LBracket; advance(); break;
                case ']': t.type = Tok::RBracket; advance(); break;
                case ',': t.type = Tok::Comma; advance(); break;
                case '.': t.type = Tok::Dot; advance(); break;
                case '>':
                case '<':
                case '=':
                case '!': {
                    t.type = Tok::CmpSym;
                    t.text += c;
                    advance();
                    if (pos_ < src_.size() && src_[pos_] == '=') {
                        t.text += '=';
                        advance();
                    }
                    if (t.text == "=" || t.text == "!")
                        err(t, "comparison operator (use ==, !=, >=, <=, >, <)");
                    break;
                }
                default: err(t, "start of expression");
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    std::string ident() {
        std::string s;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                src_[pos_] == '$')) {
            s += src_[pos_];
            advance();
        }
        return s;
    }
    void number(Token& t) {
        std::string s;
        if (src_[pos_] == '-') {
            s += '-';
            advance();
        }
        bool dec = false;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            if (src_[pos_] == '.') {
                // A dot not followed by a digit terminates the number (path dot).
                if (pos_ + 1 >= src_.size() ||
                    !std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
                    break;
                if (dec) break;
                dec = true;
            }
            s += src_[pos_];
            advance();
        }
        if (dec) {
            t.type = Tok::Dec;
            t.dec_val = std::stod(s);
        } else {
            t.type = Tok::Int;
            auto res = std::from_chars(s.data(), s.data() + s.size(), t.int_val);
            if (res.ec != std::errc{}) err(t, "integer literal");
        }
        t.text = s;
    }
    std::string string_lit() {
        advance();  // opening quote
        std::string s;
        while (pos_ < src_.size() && src_[pos_] != '"') {
            if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
            s += src_[pos_];
            advance();
        }
        if (pos_ >= src_.size()) {
            Token t;
            t.line = line_;
            t.col = col_;
            err(t, "closing '\"'");
        }
        advance();  // closing quote
        return s;
    }
    [[noreturn]] void err(const Token& t, const std::string& expected) {
        raise(Errc::SyntaxError, "at " + std::to_string(t.line) + ":" + std::to_string(t.col) +
                                     ", expected " + expected);
    }

    const std::string& src_;
    size_t pos_{0};
    int line_{1};
    int col_{1};
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprPtr run() {
        ExprPtr e = or_expr();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    const Token& peek(int ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_keyword(const std::string& kw) const {
        return peek().type == Tok::Keyword && peek().text == kw;
    }
    void expect(Tok t, const std::string& what) {
        if (peek().type != t) err(what);
    }
    [[noreturn]] void err(const std::string& expected) const {
        const Token& t = peek();
        raise(Errc::SyntaxError, "at " + std::to_string(t.line) + ":" + std::to_string(t.col) +
                                     ", expected " + expected +
                                     (t.type == Tok::End ? " (got end of input)"
                                                         : " (got '" + t.text + "')"));
    }
    Expr at(const Token& t) {
        Expr e;
        e.line = t.line;
        e.col = t.col;
        return e;
    }

    ExprPtr or_expr() {
        ExprPtr l = and_expr();
        while (at_keyword("or")) {
            Token t = take();
            ExprPtr r = and_expr();
            Expr e = at(t);
            e.node = Or{l, r};
            l = make(std::move(e));
        }
        return l;
    }

    ExprPtr and_expr() {
        ExprPtr l = not_expr();
        while (at_keyword("and")) {
            Token t = take();
            ExprPtr r = not_expr();
            Expr e = at(t);
            e.node = And{l, r};
            l = make(std::move(e));
        }
        return l;
    }

    ExprPtr not_expr() {
        if (at_keyword("not")) {
            Token t = take();
            ExprPtr inner = not_expr();
            Expr e = at(t);
            e.node = Not{inner};
            return make(std::move(e));
        }
        return cmp_expr();
    }

    ExprPtr cmp_expr() {
        ExprPtr l = operand();
        const Token& t = peek();
        if (t.type == Tok::CmpSym) {
            Token op = take();
            ExprPtr r = operand();
            Expr e = at(op);
            e.node = Cmp{sym_op(op), l, r};
            return make(std::move(e));
        }
        if (t.type == Tok::Keyword && (t.text == "is" || t.text == "in")) {
            Token op = take();
            ExprPtr r = operand();
            Expr e = at(op);
            e.node = Cmp{op.text == "is" ? CmpOp::Is : CmpOp::In, l, r};
            return make(std::move(e));
        }
        if (t.type == Tok::Keyword && t.text == "has") {
            Token op = take();
            if (!std::holds_alternative<Path>(l->node)) err("a role or holon name before 'has'");
            const Path& p = std::get<Path>(l->node);
            if (p.segments.size() != 1) err("a single-segment subject before 'has'");
            expect(Tok::Ident, "capability name after 'has'");
            Token cap = take();
            Expr e = at(op);
            e.node = Has{p.segments[0], cap.text};
            return make(std::move(e));
        }
        if (t.type == Tok::TempWord) {
            Token op = take();
            TemporalOp top = op.text == "BEFORE"  ? TemporalOp::Before
                             : op.text == "AFTER" ? TemporalOp::After
                                                  : TemporalOp::During;
            ExprPtr r = operand();
            if (top == TemporalOp::During) r = to_interval(r, op);
            Expr e = at(op);
            e.node = Temporal{top, l, r};
            return make(std::move(e));
        }
        return l;
    }

    CmpOp sym_op(const Token& t) {
        if (t.text == ">") return CmpOp::Gt;
        if (t.text == "<") return CmpOp::Lt;
        if (t.text == ">=") return CmpOp::Ge;
        if (t.text == "<=") return CmpOp::Le;
        if (t.text == "==") return CmpOp::Eq;
        return CmpOp::Ne;
    }

    ExprPtr to_interval(const ExprPtr& r, const Token& op) {
        const ListLit* list = std::get_if<ListLit>(&r->node);
        if (!list || list->items.size() != 2 || !list->items[0].is_numeric() ||
            !list->items[1].is_numeric())
            raise(Errc::TypeError, "at " + std::to_string(op.line) + ":" + std::to_string(op.col) +
                                       ", DURING needs a [from, to] tick interval");
        Expr e;
        e.line = r->line;
        e.col = r->col;
        e.node = Interval{static_cast<Tick>(list->items[0].as_number()),
                          static_cast<Tick>(list->items[1].as_number())};
        return make(std::move(e));
    }

    ExprPtr operand() {
        const Token& t = peek();
        if (t.type == Tok::AggWord) {
            Token agg = take();
            expect(Tok::LParen, "'(' after aggregation operator");
            take();
            ExprPtr sel = selector();
            expect(Tok::RParen, "')'");
            take();
            Expr e = at(agg);
            AggOp op = agg.text == "COUNT"     ? AggOp::Count
                       : agg.text == "AVERAGE" ? AggOp::Average
                                               : AggOp::Sum;
            e.node = Agg{op, sel};
            return make(std::move(e));
        }
        return primary();
    }

    ExprPtr selector() {
        if (at_keyword("sensation")) return event_sel();
        expect(Tok::Ident, "selector (members[.field] or sensation(\"kind\"))");
        return path();
    }

    ExprPtr event_sel() {
        Token kw = take();  // sensation
        expect(Tok::LParen, "'(' after sensation");
        take();
        expect(Tok::Str, "sensation kind string");
        Token kind = take();
        expect(Tok::RParen, "')'");
        take();
        Expr e = at(kw);
        e.node = EventSel{kind.text};
        return make(std::move(e));
    }

    ExprPtr path() {
        Token first = take();
        Path p;
        p.segments.push_back(first.text);
        while (peek().type == Tok::Dot) {
            take();
            if (peek().type != Tok::Ident && peek().type != Tok::Keyword &&
                peek().type != Tok::AggWord && peek().type != Tok::TempWord)
                err("path segment after '.'");
            p.segments.push_back(take().text);
        }
        Expr e = at(first);
        e.node = std::move(p);
        return make(std::move(e));
    }

    ExprPtr primary() {
        const Token& t = peek();
        switch (t.type) {
        case Tok::LParen: {
            take();
            ExprPtr e = or_expr();
            expect(Tok::RParen, "')'");
            take();
            return e;
        }
        case Tok::Str: {
            Token s = take();
            Expr e = at(s);
            e.node = Literal{Value(s.text)};
            return make(std::move(e));
        }
        case Tok::Int: {
            Token s = take();
            Expr e = at(s);
            e.node = Literal{Value(s.int_val)};
            return make(std::move(e));
        }
        case Tok::Dec: {
            Token s = take();
            Expr e = at(s);
            e.node = Literal{Value(s.dec_val)};
            return make(std::move(e));
        }
        case Tok::LBracket: return list_lit();
        case Tok::Keyword: {
            if (t.text == "true" || t.text == "false") {
                Token s = take();
                Expr e = at(s);
                e.node = Literal{Value(s.text == "true")};
                return make(std::move(e));
            }
            if (t.text == "null") {
                Token s = take();
                Expr e = at(s);
                e.node = Literal{Value::null()};
                return make(std::move(e));
            }
            if (t.text == "sensation") return event_sel();
            err("an operand");
        }
        case Tok::Ident: return path();
        default: err("an operand");
        }
    }

    ExprPtr list_lit() {
        Token open = take();
        ListLit list;
        if (peek().type != Tok::RBracket) {
            while (true) {
                list.items.push_back(literal_value());
                if (peek().type == Tok::Comma) {
                    take();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RBracket, "']'");
        take();
        Expr e = at(open);
        e.node = std::move(list);
        return make(std::move(e));
    }

    Value literal_value() {
        const Token& t = peek();
        switch (t.type) {
        case Tok::Str: return Value(take().text);
        case Tok::Int: return Value(take().int_val);
        case Tok::Dec: return Value(take().dec_val);
        case Tok::Keyword:
            if (t.text == "true" || t.text == "false") return Value(take().text == "true");
            if (t.text == "null") {
                take();
                return Value::null();
            }
            [[fallthrough]];
        default: err("a literal inside [...]");
        }
    }

    std::vector<Token> toks_;
    size_t pos_{0};
};

} // namespace

ExprPtr parse(const std::string& source) {
    Lexer lex(source);
    Parser parser(lex.run());
    ExprPtr e = parser.run();
    typecheck(e);
    return e;
}

} // namespace holon::dsl
