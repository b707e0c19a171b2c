#include <array>
#include <cctype>

#include "fpf/syntax.hpp"

namespace fpf {

namespace {

struct Alias {
    std::string_view spelling;
    TokenKind kind;
    std::string_view canonical;
};

// Longest spellings first so that prefixes never win.
constexpr std::array<Alias, 30> kSymbols{{
    {"⊕", TokenKind::Op, "⊕"},
    {"⊖", TokenKind::Op, "⊖"},
    {"∧", TokenKind::Op, "∧"},
    {"∨", TokenKind::Op, "∨"},
    {"→", TokenKind::Op, "→"},
    {"←", TokenKind::Op, "←"},
    {"¬", TokenKind::Op, "¬"},
    {"∀", TokenKind::Op, "∀"},
    {"∃", TokenKind::Op, "∃"},
    {"≠", TokenKind::Op, "≠"},
    {"ℕ", TokenKind::Ident, "nat"},
    {":=", TokenKind::Punct, ":="},
    {"+.", TokenKind::Op, "⊕"},
    {"-.", TokenKind::Op, "⊖"},
    {"/\\", TokenKind::Op, "∧"},
    {"\\/", TokenKind::Op, "∨"},
    {"->", TokenKind::Op, "→"},
    {"<-", TokenKind::Op, "←"},
    {"<>", TokenKind::Op, "≠"},
    {"++", TokenKind::Op, "++"},
    {"~", TokenKind::Op, "¬"},
    {"=", TokenKind::Op, "="},
    {".", TokenKind::Punct, "."},
    {",", TokenKind::Punct, ","},
    {":", TokenKind::Punct, ":"},
    {";", TokenKind::Punct, ";"},
    {"|", TokenKind::Punct, "|"},
    {"+", TokenKind::Punct, "+"},
    {"*", TokenKind::Punct, "*"},
    {"-", TokenKind::Punct, "-"},
}};

constexpr std::string_view kBrackets = "(){}";

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= text_.size()) break;
            out.push_back(next());
        }
        return out;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;

    Span here() const { return {line_, column_}; }

    void advance(std::size_t bytes) {
        for (std::size_t i = 0; i < bytes && pos_ < text_.size(); ++i, ++pos_) {
            auto c = static_cast<unsigned char>(text_[pos_]);
            if (c == '\n') {
                ++line_;
                column_ = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++column_;
            }
        }
    }

    bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            auto c = static_cast<unsigned char>(text_[pos_]);
            if (std::isspace(c)) {
                advance(1);
            } else if (starts_with("(*")) {
                skip_comment();
            } else {
                break;
            }
        }
    }

    void skip_comment() {
        Span start = here();
        int depth = 0;
        while (pos_ < text_.size()) {
            if (starts_with("(*")) {
                ++depth;
                advance(2);
            } else if (starts_with("*)")) {
                --depth;
                advance(2);
                if (depth == 0) return;
            } else {
                advance(1);
            }
        }
        throw Error(ErrorCode::LexError, start, "unterminated comment", {"", "", "", "", "*)"});
    }

    Token next() {
        Span span = here();
        auto c = static_cast<unsigned char>(text_[pos_]);
        if (std::isdigit(c)) {
            std::size_t end = pos_;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
            std::string digits(text_.substr(pos_, end - pos_));
            advance(end - pos_);
            return {TokenKind::Number, digits, span};
        }
        if (ident_start(c)) {
            std::size_t end = pos_;
            while (end < text_.size() && ident_char(static_cast<unsigned char>(text_[end]))) ++end;
            std::string word(text_.substr(pos_, end - pos_));
            advance(end - pos_);
            if (word == "forall") return {TokenKind::Op, "∀", span};
            if (word == "exists") return {TokenKind::Op, "∃", span};
            return {TokenKind::Ident, word, span};
        }
        if (kBrackets.find(static_cast<char>(c)) != std::string_view::npos) {
            advance(1);
            return {TokenKind::Punct, std::string(1, static_cast<char>(c)), span};
        }
        for (const auto& sym : kSymbols) {
            if (starts_with(sym.spelling)) {
                advance(sym.spelling.size());
                return {sym.kind, std::string(sym.canonical), span};
            }
        }
        std::size_t len = 1;
        if (c >= 0xC0) {
            while (pos_ + len < text_.size() && (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80) ++len;
        }
        throw Error(ErrorCode::LexError, span,
                    "unrecognised character '" + std::string(text_.substr(pos_, len)) + "'",
                    {"", std::string(text_.substr(pos_, len)), "", "", ""});
    }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace fpf
