#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phi/arith.hpp"

namespace phi {

enum class AtomKind { Successor, FactorialEq, NotDivides };

/// One relation over variables xi, xk:
///   Successor    xi + 1 = xk
///   FactorialEq  xi ! = xk
///   NotDivides   xi !| xk
struct Atom {
    AtomKind kind;
    int i = 1;
    int k = 1;

    auto operator<=>(const Atom&) const = default;
};

/// A finite set of atoms over variables x1..xn, plus optional pinned
/// values. Atoms are kept sorted and duplicate-free, so equality is
/// order-insensitive.
struct ConstraintSystem {
    int n = 0;
    std::vector<Atom> atoms;
    std::map<int, Nat> pins;

    bool operator==(const ConstraintSystem&) const = default;

    void add(Atom a);
    bool has(const Atom& a) const;
};

enum class ParseErrorKind { Syntax, Index, Pin };

struct ParseError : std::runtime_error {
    ParseError(ParseErrorKind kind_, int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          kind(kind_),
          line(line_),
          col(col_) {}
    ParseErrorKind kind;
    int line;
    int col;
};

/// Parse the .tys text format:
///   vars N
///   pin xI = V
///   xI + 1 = xK
///   xI ! = xK
///   xI !| xK        ("!|" and U+2224 both accepted)
/// Whitespace between tokens is free; '#' comments to end of line.
/// n is the declared "vars" count, else the highest index used.
ConstraintSystem parse_system(std::string_view text);

/// Canonical text: "vars N", pins by index, atoms sorted by kind then
/// indices, one per line. parse_system(serialize_system(s)) == s.
std::string serialize_system(const ConstraintSystem& sys);

/// Short human label for an atom, e.g. "x1 ! = x2".
std::string atom_to_string(const Atom& a);

}  // namespace phi
