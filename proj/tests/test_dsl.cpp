#include "phi/dsl.hpp"

#include <random>

#include "doctest.h"

using namespace phi;

TEST_CASE("parse: single fixpoint atom") {
    ConstraintSystem s = parse_system("x1 ! = x1");
    CHECK(s.n == 1);
    REQUIRE(s.atoms.size() == 1);
    CHECK(s.atoms[0] == Atom{AtomKind::FactorialEq, 1, 1});
    CHECK(s.pins.empty());
}

TEST_CASE("parse: three atoms, n from max index") {
    ConstraintSystem s = parse_system("x1 + 1 = x2\nx1 ! = x3\nx2 !| x3");
    CHECK(s.n == 3);
    REQUIRE(s.atoms.size() == 3);
    CHECK(s.has({AtomKind::Successor, 1, 2}));
    CHECK(s.has({AtomKind::FactorialEq, 1, 3}));
    CHECK(s.has({AtomKind::NotDivides, 2, 3}));
}

TEST_CASE("parse: headers, pins, comments, spacing") {
    ConstraintSystem s = parse_system(
        "# system A at x = 11\n"
        "vars 4\n"
        "pin x1 = 11\n"
        "x1!=x2   # factorial, no spaces\n"
        "x2+1=x3\n"
        "x3 ∤ x4\n");
    CHECK(s.n == 4);
    CHECK(s.pins.at(1) == 11);
    CHECK(s.has({AtomKind::FactorialEq, 1, 2}));
    CHECK(s.has({AtomKind::Successor, 2, 3}));
    CHECK(s.has({AtomKind::NotDivides, 3, 4}));

    // "!|" and the unicode operator parse identically
    CHECK(parse_system("x1 !| x2") == parse_system("x1 ∤ x2"));
    // whitespace between tokens is free
    CHECK(parse_system("x1   +   1    =     x2") == parse_system("x1+1=x2"));
}

TEST_CASE("parse: empty system needs a vars header") {
    ConstraintSystem s = parse_system("vars 2");
    CHECK(s.n == 2);
    CHECK(s.atoms.empty());
    CHECK_THROWS_AS(parse_system(""), ParseError);
    try {
        parse_system("");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::Syntax);
    }
}

TEST_CASE("parse errors carry kind and position") {
    try {
        parse_system("x1 + 2 = x2");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::Syntax);
        CHECK(e.line == 1);
        CHECK(e.col > 1);
    }
    try {
        parse_system("vars 2\nx1 ! = x3");
        FAIL("expected an index error");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::Index);
    }
    try {
        parse_system("pin x1 = 0");
        FAIL("expected a pin error");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseErrorKind::Pin);
    }
    CHECK_THROWS_AS(parse_system("x0 ! = x1"), ParseError);
    CHECK_THROWS_AS(parse_system("y1 ! = x1"), ParseError);
    CHECK_THROWS_AS(parse_system("x1 ! | x2"), ParseError);  // split "!|"
    CHECK_THROWS_AS(parse_system("vars 2\nvars 3"), ParseError);
}

TEST_CASE("duplicate atoms collapse") {
    ConstraintSystem s = parse_system("x1 ! = x2\nx1 ! = x2\nx1 ! = x2");
    CHECK(s.atoms.size() == 1);
}

TEST_CASE("serialize: canonical form") {
    ConstraintSystem s;
    s.n = 1;
    s.add({AtomKind::FactorialEq, 1, 1});
    CHECK(serialize_system(s) == "vars 1\nx1 ! = x1\n");

    ConstraintSystem empty2;
    empty2.n = 2;
    CHECK(serialize_system(empty2) == "vars 2\n");

    // atoms sort by kind then indices; pins precede atoms
    ConstraintSystem d;
    d.n = 3;
    d.add({AtomKind::NotDivides, 1, 2});
    d.add({AtomKind::Successor, 2, 3});
    d.add({AtomKind::FactorialEq, 1, 3});
    d.pins[2] = 809;
    CHECK(serialize_system(d) ==
          "vars 3\npin x2 = 809\nx2 + 1 = x3\nx1 ! = x3\nx1 !| x2\n");
}

TEST_CASE("round trip: exhaustive n <= 2, random n <= 6") {
    // all 8 systems at n = 1
    std::vector<Atom> atoms1;
    for (AtomKind k : {AtomKind::Successor, AtomKind::FactorialEq, AtomKind::NotDivides})
        atoms1.push_back({k, 1, 1});
    for (int mask = 0; mask < 8; ++mask) {
        ConstraintSystem s;
        s.n = 1;
        for (int b = 0; b < 3; ++b)
            if (mask & (1 << b)) s.add(atoms1[b]);
        CHECK(parse_system(serialize_system(s)) == s);
    }
    // all 4096 at n = 2
    std::vector<Atom> atoms2;
    for (AtomKind k : {AtomKind::Successor, AtomKind::FactorialEq, AtomKind::NotDivides})
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) atoms2.push_back({k, i, j});
    for (int mask = 0; mask < (1 << 12); ++mask) {
        ConstraintSystem s;
        s.n = 2;
        for (int b = 0; b < 12; ++b)
            if (mask & (1 << b)) s.add(atoms2[b]);
        CHECK(parse_system(serialize_system(s)) == s);
    }
    // random systems with pins at n <= 6
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        ConstraintSystem s;
        s.n = 1 + static_cast<int>(rng() % 6);
        int count = static_cast<int>(rng() % 8);
        for (int a = 0; a < count; ++a) {
            AtomKind k = static_cast<AtomKind>(rng() % 3);
            int i = 1 + static_cast<int>(rng() % s.n);
            int j = 1 + static_cast<int>(rng() % s.n);
            s.add({k, i, j});
        }
        if (rng() % 2) s.pins[1 + static_cast<int>(rng() % s.n)] = nat_of(1 + static_cast<long long>(rng() % 1000));
        CHECK(parse_system(serialize_system(s)) == s);
    }
}
