#include "diffbound/parse.hpp"

#include <cctype>
#include <sstream>

namespace diffbound {

namespace {

enum class Tok {
    Number,    // digits
    Var,       // x/a/t followed by digits
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Underscore,
    LBracket,
    RBracket,
    Comma,
    End,
};

struct Token {
    Tok kind;
    std::string text;  // digits for Number; "x12" etc. for Var
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        const int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                advance();
            }
            return {Tok::Number, digits, line, col};
        }
        if (c == 'x' || c == 'a' || c == 't') {
            std::string name(1, c);
            advance();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                throw SyntaxError("variable name needs a numeric id after '" + name + "'", line,
                                  col);
            }
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                name += text_[pos_];
                advance();
            }
            return {Tok::Var, name, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Tok::Plus, "+", line, col};
            case '-': return {Tok::Minus, "-", line, col};
            case '*': return {Tok::Star, "*", line, col};
            case '^': return {Tok::Caret, "^", line, col};
            case '/': return {Tok::Slash, "/", line, col};
            case '(': return {Tok::LParen, "(", line, col};
            case ')': return {Tok::RParen, ")", line, col};
            case '_': return {Tok::Underscore, "_", line, col};
            case '[': return {Tok::LBracket, "[", line, col};
            case ']': return {Tok::RBracket, "]", line, col};
            case ',': return {Tok::Comma, ",", line, col};
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
    }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(const std::string& text, const ParseContext& ctx) : lexer_(text), ctx_(ctx) {
        cur_ = lexer_.next();
    }

    DiffPolynomial parse() {
        DiffPolynomial p = parse_polynomial();
        expect(Tok::End, "end of input");
        return p;
    }

private:
    void bump() { cur_ = lexer_.next(); }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) {
            throw SyntaxError(std::string("expected ") + what + ", got '" + describe(cur_) + "'",
                              cur_.line, cur_.column);
        }
    }

    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? "end of input" : t.text;
    }

    long long parse_nat(const char* what) {
        expect(Tok::Number, what);
        if (cur_.text.size() > 9) {
            throw SyntaxError("number too large: " + cur_.text, cur_.line, cur_.column);
        }
        long long v = std::stoll(cur_.text);
        bump();
        return v;
    }

    DiffPolynomial parse_polynomial() {
        DiffPolynomial acc = parse_term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool minus = cur_.kind == Tok::Minus;
            bump();
            DiffPolynomial t = parse_term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    // term := (rational '*')? factor ('*' factor)* | rational
    DiffPolynomial parse_term() {
        std::optional<Rational> coeff;
        if (cur_.kind == Tok::Number || cur_.kind == Tok::Minus) {
            coeff = parse_rational();
            if (cur_.kind != Tok::Star) {
                return DiffPolynomial::constant(ctx_.m, *coeff);
            }
            bump();  // '*'
        }
        DiffPolynomial acc = parse_factor();
        while (cur_.kind == Tok::Star) {
            bump();
            acc = acc * parse_factor();
        }
        if (coeff) acc = acc * *coeff;
        return acc;
    }

    Rational parse_rational() {
        bool negative = false;
        if (cur_.kind == Tok::Minus) {
            negative = true;
            bump();
        }
        expect(Tok::Number, "a number");
        BigInt num(cur_.text);
        bump();
        BigInt den = 1;
        if (cur_.kind == Tok::Slash) {
            bump();
            expect(Tok::Number, "a denominator");
            den = BigInt(cur_.text);
            if (den == 0) throw SyntaxError("zero denominator", cur_.line, cur_.column);
            bump();
        }
        Rational r(num, den);
        return negative ? Rational(-r) : r;
    }

    DiffPolynomial parse_factor() {
        if (cur_.kind == Tok::LParen) {
            bump();
            DiffPolynomial inner = parse_polynomial();
            expect(Tok::RParen, "')'");
            bump();
            return maybe_power(std::move(inner));
        }
        if (cur_.kind == Tok::Var) {
            return maybe_power(parse_var());
        }
        throw SyntaxError("expected a variable, a number or '('", cur_.line, cur_.column);
    }

    DiffPolynomial maybe_power(DiffPolynomial base) {
        if (cur_.kind == Tok::Caret) {
            bump();
            const long long e = parse_nat("an exponent");
            if (e > 64) {
                throw DomainError("exponent " + std::to_string(e) + " above the supported 64");
            }
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    DiffPolynomial parse_var() {
        const Token tok = cur_;
        const char kind = tok.text[0];
        const int id = static_cast<int>(std::stoll(tok.text.substr(1)));
        bump();
        if (kind == 't') {
            if (cur_.kind == Tok::Underscore) {
                throw SyntaxError("derivative applied to base variable t" + std::to_string(id),
                                  cur_.line, cur_.column);
            }
            if (id < 1 || id > ctx_.m) {
                throw SyntaxError("unknown variable t" + std::to_string(id) + " (m = " +
                                      std::to_string(ctx_.m) + ")",
                                  tok.line, tok.column);
            }
            return DiffPolynomial::indeterminate(Indeterminate::base(id, ctx_.m));
        }
        MultiIndex xi = MultiIndex::zero(ctx_.m);
        if (cur_.kind == Tok::Underscore) {
            bump();
            expect(Tok::LBracket, "'[' after '_'");
            bump();
            std::vector<int> entries;
            entries.push_back(static_cast<int>(parse_nat("a derivative entry")));
            while (cur_.kind == Tok::Comma) {
                bump();
                entries.push_back(static_cast<int>(parse_nat("a derivative entry")));
            }
            expect(Tok::RBracket, "']'");
            bump();
            if (static_cast<int>(entries.size()) != ctx_.m) {
                throw SyntaxError("derivative tag needs exactly " + std::to_string(ctx_.m) +
                                      " entries, got " + std::to_string(entries.size()),
                                  tok.line, tok.column);
            }
            xi = MultiIndex(std::move(entries));
        }
        if (kind == 'x') {
            if (id < 1 || !ctx_.allow_state || (ctx_.max_state > 0 && id > ctx_.max_state)) {
                throw SyntaxError("unknown variable x" + std::to_string(id), tok.line, tok.column);
            }
            return DiffPolynomial::indeterminate(Indeterminate::state(id, std::move(xi)));
        }
        if (id < 1 || !ctx_.allow_parameters ||
            (ctx_.max_parameter > 0 && id > ctx_.max_parameter)) {
            throw SyntaxError("unknown variable a" + std::to_string(id), tok.line, tok.column);
        }
        return DiffPolynomial::indeterminate(Indeterminate::parameter(id, std::move(xi)));
    }

    Lexer lexer_;
    ParseContext ctx_;
    Token cur_;
};

std::string strip_comment(const std::string& line) {
    const std::size_t hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

struct RawLine {
    int number;
    std::string text;
};

std::vector<RawLine> significant_lines(const std::string& text) {
    std::vector<RawLine> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string body = strip_comment(line);
        if (!blank(body)) out.push_back({number, body});
    }
    return out;
}

// Matches "d<k> x<j>" at the head of a line; returns position after it.
bool match_dk_header(const std::string& s, int& k, int& j, std::size_t& after) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto number = [&](int& out) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || i - start > 6) return false;
        out = std::stoi(s.substr(start, i - start));
        return true;
    };
    skip();
    if (i >= s.size() || s[i] != 'd') return false;
    ++i;
    if (!number(k)) return false;
    skip();
    if (i >= s.size() || s[i] != 'x') return false;
    ++i;
    if (!number(j)) return false;
    skip();
    if (i >= s.size() || s[i] != '=') return false;
    after = i + 1;
    return true;
}

bool match_poly_header(const std::string& s, std::string& name, std::size_t& after) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    if (s.compare(i, 4, "poly") != 0) return false;
    i += 4;
    if (i >= s.size() || !std::isspace(static_cast<unsigned char>(s[i]))) return false;
    skip();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    if (i == start) return false;
    name = s.substr(start, i - start);
    skip();
    if (i >= s.size() || s[i] != '=') return false;
    after = i + 1;
    return true;
}

}  // namespace

DiffPolynomial parse_poly(const std::string& text, const ParseContext& ctx) {
    if (ctx.m < 1) throw DomainError("parse context needs m >= 1");
    return Parser(text, ctx).parse();
}

ParsedFile parse_input_file(const std::string& text, std::optional<int> m_hint,
                            std::optional<int> n_hint) {
    const auto lines = significant_lines(text);

    // First pass: system shape from the dk lines.
    int max_k = 0, max_j = 0;
    bool any_dk = false;
    for (const auto& l : lines) {
        int k = 0, j = 0;
        std::size_t after = 0;
        if (match_dk_header(l.text, k, j, after)) {
            any_dk = true;
            max_k = std::max(max_k, k);
            max_j = std::max(max_j, j);
        }
    }

    ParsedFile out;
    out.m = m_hint.value_or(any_dk ? max_k : 1);
    if (any_dk && max_k > out.m) {
        throw DomainError("system uses d" + std::to_string(max_k) + " but m = " +
                          std::to_string(out.m));
    }

    ParseContext ctx;
    ctx.m = out.m;

    std::map<std::pair<int, int>, DiffPolynomial> assignments;
    for (const auto& l : lines) {
        int k = 0, j = 0;
        std::size_t after = 0;
        std::string name;
        if (match_dk_header(l.text, k, j, after)) {
            if (k < 1 || j < 1) throw DomainError("bad assignment header on line " +
                                                  std::to_string(l.number));
            DiffPolynomial rhs = parse_poly(l.text.substr(after), ctx);
            if (!assignments.emplace(std::make_pair(k, j), rhs).second) {
                throw DomainError("duplicate assignment d" + std::to_string(k) + " x" +
                                  std::to_string(j) + " on line " + std::to_string(l.number));
            }
        } else if (match_poly_header(l.text, name, after)) {
            out.named.emplace_back(name, parse_poly(l.text.substr(after), ctx));
        } else {
            throw DomainError("unrecognized line " + std::to_string(l.number) +
                              " (expected 'd<k> x<j> = ...' or 'poly <name> = ...')");
        }
    }

    int n = n_hint.value_or(0);
    n = std::max(n, max_j);
    for (const auto& [kj, rhs] : assignments) n = std::max(n, rhs.max_state_id());
    for (const auto& [name, p] : out.named) n = std::max(n, p.max_state_id());
    out.n = n;

    if (any_dk) {
        std::vector<DiffPolynomial> grid;
        grid.reserve(static_cast<std::size_t>(out.m) * n);
        for (int k = 1; k <= out.m; ++k) {
            for (int j = 1; j <= n; ++j) {
                auto it = assignments.find({k, j});
                if (it == assignments.end()) {
                    throw DomainError("missing assignment d" + std::to_string(k) + " x" +
                                      std::to_string(j));
                }
                grid.push_back(it->second);
            }
        }
        out.system.emplace(out.m, n, std::move(grid));
    } else if (!assignments.empty()) {
        throw DomainError("internal: assignments without dk lines");
    }
    return out;
}

std::map<int, DiffPolynomial> parse_point_file(const std::string& text, int m) {
    ParseContext ctx;
    ctx.m = m;
    ctx.allow_state = false;
    ctx.allow_parameters = false;
    std::map<int, DiffPolynomial> out;
    for (const auto& l : significant_lines(text)) {
        std::size_t i = 0;
        while (i < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[i]))) ++i;
        if (i >= l.text.size() || l.text[i] != 'x') {
            throw DomainError("point line " + std::to_string(l.number) +
                              " must look like 'x<j> = <poly in t>'");
        }
        ++i;
        std::size_t start = i;
        while (i < l.text.size() && std::isdigit(static_cast<unsigned char>(l.text[i]))) ++i;
        if (i == start) throw DomainError("bad point line " + std::to_string(l.number));
        const int j = std::stoi(l.text.substr(start, i - start));
        while (i < l.text.size() && std::isspace(static_cast<unsigned char>(l.text[i]))) ++i;
        if (i >= l.text.size() || l.text[i] != '=') {
            throw DomainError("point line " + std::to_string(l.number) + " needs '='");
        }
        if (!out.emplace(j, parse_poly(l.text.substr(i + 1), ctx)).second) {
            throw DomainError("duplicate point assignment for x" + std::to_string(j));
        }
    }
    return out;
}

}  // namespace diffbound
