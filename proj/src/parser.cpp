#include "bdnsat/error.hpp"
#include "bdnsat/program.hpp"

#include <fstream>
#include <sstream>

namespace bdn {
namespace {

enum class Tok { ident, kw_not, bar, if_, comma, dot, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        const std::size_t line = line_;
        const std::size_t col = col_;
        if (pos_ >= src_.size()) return {Tok::end, {}, line, col};
        const char c = src_[pos_];
        if (c == '|') return advance(1), Token{Tok::bar, "|", line, col};
        if (c == ',') return advance(1), Token{Tok::comma, ",", line, col};
        if (c == '.') return advance(1), Token{Tok::dot, ".", line, col};
        if (c == ':') {
            if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') return advance(2), Token{Tok::if_, ":-", line, col};
            throw ParseError("expected ':-'", line, col);
        }
        if (is_word_char(c)) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && is_word_char(src_[pos_])) advance(1);
            std::string word(src_.substr(start, pos_ - start));
            if (!AtomTable::valid_name(word)) throw ParseError("invalid atom name '" + word + "'", line, col);
            return {word == "not" ? Tok::kw_not : Tok::ident, std::move(word), line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    static bool is_word_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { shift(); }

    Program parse() {
        ProgramBuilder builder;
        while (cur_.kind != Tok::end) builder.add(rule());
        return builder.build();
    }

private:
    void shift() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& what) const {
        const std::string got = cur_.kind == Tok::end ? "end of input" : "'" + cur_.text + "'";
        throw ParseError("expected " + what + ", got " + got, cur_.line, cur_.column);
    }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail(what);
        shift();
    }

    std::string atom() {
        if (cur_.kind != Tok::ident) fail("atom");
        std::string name = cur_.text;
        shift();
        return name;
    }

    SourceRule rule() {
        SourceRule r;
        if (cur_.kind != Tok::if_) {
            r.head.push_back(atom());
            while (cur_.kind == Tok::bar) {
                shift();
                r.head.push_back(atom());
            }
        }
        if (cur_.kind == Tok::if_) {
            shift();
            do {
                if (!r.body.empty()) shift();
                bool negated = false;
                if (cur_.kind == Tok::kw_not) {
                    negated = true;
                    shift();
                }
                r.body.emplace_back(atom(), negated);
            } while (cur_.kind == Tok::comma);
        } else if (r.head.empty()) {
            fail("':-' or atom");
        }
        expect(Tok::dot, "'.'");
        return r;
    }

    Lexer lex_;
    Token cur_{Tok::end, {}, 0, 0};
};

} // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

Program parse_program_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

} // namespace bdn
