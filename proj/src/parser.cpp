#include <cctype>
#include <sstream>
#include <stdexcept>

#include "latc/syntax.hpp"

// Recursive-descent parser for the surface grammar. Whitespace-insensitive,
// line comments start with `--`. Applications are chains of atoms;
// if/fun/fix/case extend as far right as possible.
namespace latc::syntax {

namespace {

enum class Tok {
    Ident,
    NatLit,
    KwMain,
    KwAt,
    KwVal,
    KwTrue,
    KwFalse,
    KwNil,
    KwCons,
    KwCase,
    KwOf,
    KwIf,
    KwThen,
    KwElse,
    KwFun,
    KwFix,
    KwGet,
    KwForall,
    KwSucc,
    KwUnit,
    KwBool,
    KwNat,
    KwList,
    KwMin,
    KwMax,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Eq,
    FatArrow,
    Arrow,
    Bar,
    Plus,
    Star,
    Dot,
    At,
    End
};

struct Token {
    Tok kind;
    std::string text;
    Nat nat;
    Pos pos;
};

struct ParseFailure {
    SyntaxError err;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Pos pos{line_, col_};
            if (eof()) {
                out.push_back({Tok::End, "", 0, pos});
                return out;
            }
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                    digits += advance();
                out.push_back({Tok::NatLit, digits, Nat(digits), pos});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                while (!eof()) {
                    char d = peek();
                    if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'')
                        word += advance();
                    else
                        break;
                }
                out.push_back({keyword(word), word, 0, pos});
                continue;
            }
            advance();
            switch (c) {
                case '(': out.push_back({Tok::LParen, "(", 0, pos}); break;
                case ')': out.push_back({Tok::RParen, ")", 0, pos}); break;
                case '[': out.push_back({Tok::LBracket, "[", 0, pos}); break;
                case ']': out.push_back({Tok::RBracket, "]", 0, pos}); break;
                case '{': out.push_back({Tok::LBrace, "{", 0, pos}); break;
                case '}': out.push_back({Tok::RBrace, "}", 0, pos}); break;
                case ',': out.push_back({Tok::Comma, ",", 0, pos}); break;
                case ':': out.push_back({Tok::Colon, ":", 0, pos}); break;
                case '|': out.push_back({Tok::Bar, "|", 0, pos}); break;
                case '+': out.push_back({Tok::Plus, "+", 0, pos}); break;
                case '*': out.push_back({Tok::Star, "*", 0, pos}); break;
                case '.': out.push_back({Tok::Dot, ".", 0, pos}); break;
                case '@': out.push_back({Tok::At, "@", 0, pos}); break;
                case '=':
                    if (!eof() && peek() == '>') {
                        advance();
                        out.push_back({Tok::FatArrow, "=>", 0, pos});
                    } else {
                        out.push_back({Tok::Eq, "=", 0, pos});
                    }
                    break;
                case '-':
                    if (!eof() && peek() == '>') {
                        advance();
                        out.push_back({Tok::Arrow, "->", 0, pos});
                    } else {
                        throw ParseFailure{{pos, "unexpected character '-'"}};
                    }
                    break;
                default:
                    throw ParseFailure{{pos, std::string("unexpected character '") + c + "'"}};
            }
        }
    }

  private:
    static Tok keyword(const std::string& w) {
        if (w == "main") return Tok::KwMain;
        if (w == "at") return Tok::KwAt;
        if (w == "val") return Tok::KwVal;
        if (w == "true") return Tok::KwTrue;
        if (w == "false") return Tok::KwFalse;
        if (w == "nil") return Tok::KwNil;
        if (w == "cons") return Tok::KwCons;
        if (w == "case") return Tok::KwCase;
        if (w == "of") return Tok::KwOf;
        if (w == "if") return Tok::KwIf;
        if (w == "then") return Tok::KwThen;
        if (w == "else") return Tok::KwElse;
        if (w == "fun") return Tok::KwFun;
        if (w == "fix") return Tok::KwFix;
        if (w == "get") return Tok::KwGet;
        if (w == "forall") return Tok::KwForall;
        if (w == "S") return Tok::KwSucc;
        if (w == "Unit") return Tok::KwUnit;
        if (w == "Bool") return Tok::KwBool;
        if (w == "Nat") return Tok::KwNat;
        if (w == "List") return Tok::KwList;
        if (w == "min") return Tok::KwMin;
        if (w == "max") return Tok::KwMax;
        return Tok::Ident;
    }

    bool eof() const { return i_ >= src_.size(); }
    char peek() const { return src_[i_]; }
    char advance() {
        char c = src_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (!eof()) {
            char c = peek();
            if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '-') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        Program p;
        while (at(Tok::KwAt)) p.defs.push_back(placed_def());
        expect(Tok::KwMain, "'main'");
        p.mainPos = prev().pos;
        expect(Tok::KwAt, "'at'");
        p.mainPeer = PeerType{ident("peer name")};
        expect(Tok::Eq, "'='");
        p.mainTerm = term();
        expect(Tok::End, "end of input");
        return p;
    }

    ArithPtr arith_only() {
        ArithPtr a = arith();
        expect(Tok::End, "end of input");
        return a;
    }

  private:
    PlacedDef placed_def() {
        PlacedDef d;
        expect(Tok::KwAt, "'at'");
        d.pos = prev().pos;
        d.peer = PeerType{ident("peer name")};
        expect(Tok::Colon, "':'");
        expect(Tok::KwVal, "'val'");
        d.name = ident("definition name");
        expect(Tok::Colon, "':'");
        d.annot = sized_type();
        expect(Tok::Eq, "'='");
        d.body = term();
        return d;
    }

    SizedType sized_type() {
        expect(Tok::LParen, "'('");
        SizedType t;
        t.base = basic_type();
        expect(Tok::Comma, "','");
        t.size = arith();
        expect(Tok::Comma, "','");
        t.latency = arith();
        expect(Tok::RParen, "')'");
        return t;
    }

    BasicPtr basic_type() {
        if (accept(Tok::KwUnit)) return unit_type();
        if (accept(Tok::KwBool)) return bool_type();
        if (accept(Tok::KwNat)) return nat_type();
        if (accept(Tok::KwList)) {
            expect(Tok::LBracket, "'['");
            BasicPtr elem = basic_type();
            expect(Tok::RBracket, "']'");
            return list_type(elem);
        }
        if (accept(Tok::KwForall)) {
            std::string sv = ident("size variable");
            expect(Tok::Dot, "'.'");
            expect(Tok::LParen, "'('");
            BasicPtr arg = basic_type();
            expect(Tok::Comma, "','");
            ArithPtr argSize = arith();
            expect(Tok::RParen, "')'");
            expect(Tok::Arrow, "'->'");
            SizedType result = sized_type();
            return fun_type(sv, arg, argSize, result);
        }
        fail("a basic type");
    }

    ArithPtr arith() {
        ArithPtr a = arith_mul();
        while (accept(Tok::Plus)) a = arith::add(a, arith_mul());
        return a;
    }

    ArithPtr arith_mul() {
        ArithPtr a = arith_atom();
        while (accept(Tok::Star)) a = arith::mul(a, arith_atom());
        return a;
    }

    ArithPtr arith_atom() {
        if (at(Tok::NatLit)) {
            Token t = next();
            return arith::lit(t.nat);
        }
        if (at(Tok::Ident)) return arith::variable(next().text);
        if (accept(Tok::KwSucc)) {
            expect(Tok::LParen, "'('");
            ArithPtr a = arith();
            expect(Tok::RParen, "')'");
            return arith::succ(a);
        }
        if (at(Tok::KwMin) || at(Tok::KwMax)) {
            bool isMin = next().kind == Tok::KwMin;
            expect(Tok::LParen, "'('");
            ArithPtr a = arith();
            expect(Tok::Comma, "','");
            ArithPtr b = arith();
            expect(Tok::RParen, "')'");
            return isMin ? arith::amin(a, b) : arith::amax(a, b);
        }
        if (accept(Tok::LParen)) {
            ArithPtr a = arith();
            expect(Tok::RParen, "')'");
            return a;
        }
        fail("an arithmetic term");
    }

    TermPtr term() {
        Pos pos = cur().pos;
        if (accept(Tok::KwIf)) {
            TermPtr c = term();
            expect(Tok::KwThen, "'then'");
            TermPtr t = term();
            expect(Tok::KwElse, "'else'");
            TermPtr e = term();
            return tif(c, t, e, pos);
        }
        if (accept(Tok::KwFun)) {
            expect(Tok::LParen, "'('");
            std::string param = ident("parameter name");
            expect(Tok::Colon, "':'");
            BasicPtr argType = basic_type();
            expect(Tok::At, "'@'");
            std::string sizeVar = ident("size variable");
            expect(Tok::RParen, "')'");
            expect(Tok::FatArrow, "'=>'");
            TermPtr body = term();
            return tlam(param, argType, sizeVar, body, pos);
        }
        if (accept(Tok::KwFix)) {
            std::string selfVar = ident("function name");
            expect(Tok::LParen, "'('");
            std::string param = ident("parameter name");
            expect(Tok::Colon, "':'");
            BasicPtr argType = basic_type();
            expect(Tok::At, "'@'");
            std::string sizeVar = ident("size variable");
            expect(Tok::RParen, "')'");
            expect(Tok::Colon, "':'");
            SizedType result = sized_type();
            expect(Tok::FatArrow, "'=>'");
            TermPtr body = term();
            return tfix(selfVar, param, argType, sizeVar, result, body, pos);
        }
        if (accept(Tok::KwCase)) {
            TermPtr scrut = term();
            expect(Tok::KwOf, "'of'");
            expect(Tok::KwNil, "'nil'");
            expect(Tok::FatArrow, "'=>'");
            TermPtr nilBranch = term();
            expect(Tok::Bar, "'|'");
            expect(Tok::KwCons, "'cons'");
            expect(Tok::LParen, "'('");
            std::string headVar = ident("head variable");
            expect(Tok::Comma, "','");
            std::string tailVar = ident("tail variable");
            if (headVar == tailVar)
                throw ParseFailure{{prev().pos, "duplicate pattern variable '" + tailVar + "'"}};
            expect(Tok::RParen, "')'");
            expect(Tok::FatArrow, "'=>'");
            TermPtr consBranch = term();
            return tcase(scrut, nilBranch, headVar, tailVar, consBranch, pos);
        }
        return app();
    }

    bool starts_atom() const {
        switch (cur().kind) {
            case Tok::Ident:
            case Tok::NatLit:
            case Tok::KwTrue:
            case Tok::KwFalse:
            case Tok::KwNil:
            case Tok::KwCons:
            case Tok::KwSucc:
            case Tok::KwGet:
            case Tok::LParen:
                return true;
            default:
                return false;
        }
    }

    TermPtr app() {
        TermPtr f = atom();
        while (starts_atom()) {
            Pos pos = cur().pos;
            f = tapp(f, atom(), pos);
        }
        return f;
    }

    TermPtr atom() {
        Pos pos = cur().pos;
        if (at(Tok::NatLit)) return tnat(next().nat, pos);
        if (at(Tok::Ident)) return tvar(next().text, pos);
        if (accept(Tok::KwTrue)) return tbool(true, pos);
        if (accept(Tok::KwFalse)) return tbool(false, pos);
        if (accept(Tok::KwSucc)) {
            expect(Tok::LParen, "'('");
            TermPtr t = term();
            expect(Tok::RParen, "')'");
            return tsucc(t, pos);
        }
        if (accept(Tok::KwNil)) {
            expect(Tok::LBracket, "'['");
            BasicPtr elem = basic_type();
            expect(Tok::RBracket, "']'");
            return tnil(elem, pos);
        }
        if (accept(Tok::KwCons)) {
            expect(Tok::LParen, "'('");
            TermPtr h = term();
            expect(Tok::Comma, "','");
            TermPtr t = term();
            expect(Tok::RParen, "')'");
            return tcons(h, t, pos);
        }
        if (accept(Tok::KwGet)) {
            std::string peer = ident("peer name");
            expect(Tok::LBrace, "'{'");
            TermPtr body = term();
            expect(Tok::RBrace, "'}'");
            return tget(PeerType{peer}, body, pos);
        }
        if (accept(Tok::LParen)) {
            if (accept(Tok::RParen)) return tunit(pos);
            TermPtr t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        fail("a term");
    }

    // --- token plumbing ---
    const Token& cur() const { return toks_[i_]; }
    const Token& prev() const { return toks_[i_ - 1]; }
    Token next() { return toks_[i_++]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool accept(Tok k) {
        if (at(k)) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(Tok k, const std::string& what) {
        if (!accept(k)) fail(what);
    }
    std::string ident(const std::string& what) {
        if (!at(Tok::Ident)) fail(what);
        return next().text;
    }
    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
        throw ParseFailure{{cur().pos, "expected " + expected + ", found " + found}};
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) {
    ParseResult res;
    try {
        Lexer lex(source);
        Parser p(lex.run());
        res.program = p.program();
    } catch (const ParseFailure& f) {
        res.errors.push_back(f.err);
    }
    return res;
}

ArithPtr parse_arith(std::string_view source) {
    try {
        Lexer lex(source);
        Parser p(lex.run());
        return p.arith_only();
    } catch (const ParseFailure& f) {
        std::ostringstream os;
        os << f.err.pos.line << ':' << f.err.pos.col << ": " << f.err.message;
        throw std::runtime_error(os.str());
    }
}

}  // namespace latc::syntax
