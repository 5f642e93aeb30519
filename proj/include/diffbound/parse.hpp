#ifndef DIFFBOUND_PARSE_HPP
#define DIFFBOUND_PARSE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffbound/diffpoly.hpp"

namespace diffbound {

/// Variable declarations in force while parsing one polynomial.
struct ParseContext {
    int m = 1;
    int max_state = 0;      // 0 = unrestricted
    int max_parameter = 0;  // 0 = unrestricted
    bool allow_state = true;
    bool allow_parameters = true;
};

/// Syntax errors carry 1-based line/column of the offending token.
class SyntaxError : public DomainError {
public:
    SyntaxError(const std::string& what, int line, int column)
        : DomainError(what + " (line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ")"),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parses one polynomial in the module grammar:
///   poly    := term (('+'|'-') term)*
///   term    := (rational '*')? factor ('*' factor)* | rational
///   factor  := var ('^' nat)? | '(' poly ')' ('^' nat)?
///   var     := ('x'|'a') nat deriv? | 't' nat
///   deriv   := '_[' nat (',' nat)* ']'      (exactly m entries)
///   rational:= int ('/' nat)?
DiffPolynomial parse_poly(const std::string& text, const ParseContext& ctx);

/// An input file: blank lines and '#' comments ignored; the rest are
///   d<k> x<j> = <poly>     system assignment lines
///   poly <name> = <poly>   named polynomials (e.g. prolongation generators)
struct ParsedFile {
    int m = 1;
    int n = 0;                               // max state id seen (dk lines or rhs)
    std::optional<DiffSystem> system;        // present iff dk lines appear
    std::vector<std::pair<std::string, DiffPolynomial>> named;
};

ParsedFile parse_input_file(const std::string& text, std::optional<int> m_hint = {},
                            std::optional<int> n_hint = {});

/// Point files assign base-variable polynomials to state variables:
///   x<j> = <poly in t1..tm>
std::map<int, DiffPolynomial> parse_point_file(const std::string& text, int m);

}  // namespace diffbound

#endif
