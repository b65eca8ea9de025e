#include "phi/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace phi {

void ConstraintSystem::add(Atom a) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
    if (it == atoms.end() || *it != a) atoms.insert(it, a);
}

bool ConstraintSystem::has(const Atom& a) const {
    return std::binary_search(atoms.begin(), atoms.end(), a);
}

namespace {

struct Token {
    enum Type { KwVars, KwPin, Var, Int, Plus, Eq, Bang, NotDiv, End } type;
    std::string text;
    long long value = 0;  // Int value or Var index
    int col = 1;
};

constexpr std::string_view kNotDividesUtf8 = "∤";

class LineLexer {
  public:
    LineLexer(std::string_view line, int line_no)
        : line_(line), line_no_(line_no) {}

    Token next() {
        skip_space();
        int col = static_cast<int>(pos_) + 1;
        if (pos_ >= line_.size()) return {Token::End, "", 0, col};
        char c = line_[pos_];
        if (c == '+') { ++pos_; return {Token::Plus, "+", 0, col}; }
        if (c == '=') { ++pos_; return {Token::Eq, "=", 0, col}; }
        if (c == '!') {
            if (pos_ + 1 < line_.size() && line_[pos_ + 1] == '|') {
                pos_ += 2;
                return {Token::NotDiv, "!|", 0, col};
            }
            ++pos_;
            return {Token::Bang, "!", 0, col};
        }
        if (line_.substr(pos_).starts_with(kNotDividesUtf8)) {
            pos_ += kNotDividesUtf8.size();
            return {Token::NotDiv, "!|", 0, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < line_.size() &&
                   std::isdigit(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
            std::string text(line_.substr(start, pos_ - start));
            return {Token::Int, text, std::stoll(text), col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < line_.size() &&
                   (std::isalnum(static_cast<unsigned char>(line_[pos_]))))
                ++pos_;
            std::string text(line_.substr(start, pos_ - start));
            if (text == "vars") return {Token::KwVars, text, 0, col};
            if (text == "pin") return {Token::KwPin, text, 0, col};
            if (text.size() > 1 && text[0] == 'x' && text[1] != '0' &&
                std::all_of(text.begin() + 1, text.end(), [](char d) {
                    return std::isdigit(static_cast<unsigned char>(d));
                }))
                return {Token::Var, text, std::stoll(text.substr(1)), col};
            fail(col, "unrecognized word '" + text + "'");
        }
        fail(col, std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] void fail(int col, const std::string& msg) const {
        throw ParseError(ParseErrorKind::Syntax, line_no_, col, msg);
    }

  private:
    void skip_space() {
        while (pos_ < line_.size() &&
               std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
    }
    std::string_view line_;
    int line_no_;
    size_t pos_ = 0;
};

}  // namespace

ConstraintSystem parse_system(std::string_view text) {
    ConstraintSystem sys;
    bool have_vars = false;
    int declared_n = 0;
    int max_index = 0;
    std::vector<std::pair<Atom, int>> atoms_seen;   // with line for index checks
    std::vector<std::tuple<int, Nat, int>> pins_seen;  // var, value, line

    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string_view line = text.substr(
            start, end == std::string_view::npos ? text.size() - start
                                                 : end - start);
        ++line_no;
        if (size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        LineLexer lex(line, line_no);
        Token t = lex.next();
        if (t.type == Token::End) {
            // blank line
        } else if (t.type == Token::KwVars) {
            Token n = lex.next();
            if (n.type != Token::Int)
                lex.fail(n.col, "expected a count after 'vars'");
            if (have_vars)
                lex.fail(t.col, "duplicate 'vars' header");
            if (n.value < 1)
                lex.fail(n.col, "'vars' count must be >= 1");
            have_vars = true;
            declared_n = static_cast<int>(n.value);
            if (lex.next().type != Token::End)
                lex.fail(t.col, "trailing input after 'vars' header");
        } else if (t.type == Token::KwPin) {
            Token v = lex.next();
            if (v.type != Token::Var) lex.fail(v.col, "expected a variable after 'pin'");
            Token eq = lex.next();
            if (eq.type != Token::Eq) lex.fail(eq.col, "expected '=' in pin");
            Token val = lex.next();
            if (val.type != Token::Int) lex.fail(val.col, "expected an integer pin value");
            if (val.value < 1)
                throw ParseError(ParseErrorKind::Pin, line_no, val.col,
                                 "pin values must be >= 1");
            if (lex.next().type != Token::End)
                lex.fail(val.col, "trailing input after pin");
            pins_seen.emplace_back(static_cast<int>(v.value), Nat(val.text), line_no);
            max_index = std::max(max_index, static_cast<int>(v.value));
        } else if (t.type == Token::Var) {
            int i = static_cast<int>(t.value);
            Token op = lex.next();
            Atom atom{};
            if (op.type == Token::Plus) {
                Token one = lex.next();
                if (one.type != Token::Int || one.value != 1)
                    lex.fail(one.col, "expected '1' after '+'");
                Token eq = lex.next();
                if (eq.type != Token::Eq) lex.fail(eq.col, "expected '='");
                Token rhs = lex.next();
                if (rhs.type != Token::Var) lex.fail(rhs.col, "expected a variable");
                atom = {AtomKind::Successor, i, static_cast<int>(rhs.value)};
            } else if (op.type == Token::Bang) {
                Token eq = lex.next();
                if (eq.type != Token::Eq) lex.fail(eq.col, "expected '=' after '!'");
                Token rhs = lex.next();
                if (rhs.type != Token::Var) lex.fail(rhs.col, "expected a variable");
                atom = {AtomKind::FactorialEq, i, static_cast<int>(rhs.value)};
            } else if (op.type == Token::NotDiv) {
                Token rhs = lex.next();
                if (rhs.type != Token::Var) lex.fail(rhs.col, "expected a variable");
                atom = {AtomKind::NotDivides, i, static_cast<int>(rhs.value)};
            } else {
                lex.fail(op.col, "expected '+', '!', or '!|' after variable");
            }
            if (lex.next().type != Token::End)
                lex.fail(t.col, "trailing input after atom");
            atoms_seen.emplace_back(atom, line_no);
            max_index = std::max({max_index, atom.i, atom.k});
        } else {
            lex.fail(t.col, "expected 'vars', 'pin', or an atom");
        }

        if (end == std::string_view::npos) break;
        start = end + 1;
    }

    if (have_vars) {
        if (max_index > declared_n)
            throw ParseError(ParseErrorKind::Index, line_no, 1,
                             "variable x" + std::to_string(max_index) +
                                 " exceeds declared vars " +
                                 std::to_string(declared_n));
        sys.n = declared_n;
    } else {
        if (max_index == 0)
            throw ParseError(ParseErrorKind::Syntax, line_no, 1,
                             "empty input needs a 'vars' header");
        sys.n = max_index;
    }
    for (auto& [atom, ln] : atoms_seen) sys.add(atom);
    for (auto& [var, value, ln] : pins_seen) sys.pins[var] = value;
    return sys;
}

std::string atom_to_string(const Atom& a) {
    std::string xi = "x" + std::to_string(a.i);
    std::string xk = "x" + std::to_string(a.k);
    switch (a.kind) {
        case AtomKind::Successor: return xi + " + 1 = " + xk;
        case AtomKind::FactorialEq: return xi + " ! = " + xk;
        case AtomKind::NotDivides: return xi + " !| " + xk;
    }
    return {};
}

std::string serialize_system(const ConstraintSystem& sys) {
    std::ostringstream out;
    out << "vars " << sys.n << "\n";
    for (const auto& [var, value] : sys.pins)
        out << "pin x" << var << " = " << value.get_str() << "\n";
    for (const Atom& a : sys.atoms) out << atom_to_string(a) << "\n";
    return out.str();
}

}  // namespace phi
