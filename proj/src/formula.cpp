#include "trc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

namespace trc {

Formula top() { return Formula{}; }

Formula atom(std::string name) {
  Formula f;
  f.kind = Formula::Kind::Atom;
  f.name = std::move(name);
  return f;
}

Formula diamond(Label label, Formula body) {
  Formula f;
  f.kind = Formula::Kind::Diamond;
  f.label = label;
  f.lhs = std::make_shared<const Formula>(std::move(body));
  return f;
}

Formula conj(Formula l, Formula r) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.lhs = std::make_shared<const Formula>(std::move(l));
  f.rhs = std::make_shared<const Formula>(std::move(r));
  return f;
}

const Formula& body(const Formula& f) { return *f.lhs; }
const Formula& left(const Formula& f) { return *f.lhs; }
const Formula& right(const Formula& f) { return *f.rhs; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Atom: return a.name == b.name;
    case Formula::Kind::Diamond: return a.label == b.label && *a.lhs == *b.lhs;
    case Formula::Kind::And: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  }
  return false;
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Formula::Kind::Top:
      return 0;
    case Formula::Kind::Atom:
      return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
    case Formula::Kind::Diamond: {
      if (a.label != b.label) return a.label < b.label ? -1 : 1;
      return compare(*a.lhs, *b.lhs);
    }
    case Formula::Kind::And: {
      int c = compare(*a.lhs, *b.lhs);
      if (c != 0) return c;
      return compare(*a.rhs, *b.rhs);
    }
  }
  return 0;
}

std::uint64_t modal_depth(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Top:
    case Formula::Kind::Atom:
      return 0;
    case Formula::Kind::Diamond:
      return 1 + modal_depth(*f.lhs);
    case Formula::Kind::And:
      return std::max(modal_depth(*f.lhs), modal_depth(*f.rhs));
  }
  return 0;
}

std::uint64_t formula_size(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Top:
    case Formula::Kind::Atom:
      return 1;
    case Formula::Kind::Diamond:
      return 1 + formula_size(*f.lhs);
    case Formula::Kind::And:
      return 1 + formula_size(*f.lhs) + formula_size(*f.rhs);
  }
  return 1;
}

Formula conj_list(const std::vector<Formula>& fs) {
  Formula acc = top();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) acc = conj(*it, std::move(acc));
  return acc;
}

namespace {

void print_to(const Formula& f, std::string& out);

// Operand of "&" or body of a diamond: parenthesize conjunctions.
void print_tight(const Formula& f, std::string& out) {
  if (f.kind == Formula::Kind::And) {
    out += '(';
    print_to(f, out);
    out += ')';
  } else {
    print_to(f, out);
  }
}

void print_to(const Formula& f, std::string& out) {
  switch (f.kind) {
    case Formula::Kind::Top:
      out += 'T';
      return;
    case Formula::Kind::Atom:
      out += f.name;
      return;
    case Formula::Kind::Diamond:
      out += '<';
      out += std::to_string(f.label);
      out += '>';
      print_tight(*f.lhs, out);
      return;
    case Formula::Kind::And:
      print_tight(*f.lhs, out);
      out += " & ";
      print_to(*f.rhs, out);
      return;
  }
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& expected) {
    std::string got = pos < text.size() ? std::string(1, text[pos]) : "end of input";
    throw ParseError("expected " + expected + " at offset " + std::to_string(pos) +
                         ", got '" + got + "'",
                     pos);
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Label nat() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("a natural number");
    Label v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      Label d = static_cast<Label>(text[pos] - '0');
      if (v > (std::numeric_limits<Label>::max() - d) / 10)
        throw ParseError("label out of range at offset " + std::to_string(pos), pos);
      v = v * 10 + d;
      ++pos;
    }
    return v;
  }

  Formula unary() {
    skip_ws();
    if (pos >= text.size()) fail("a formula");
    char c = text[pos];
    if (c == '<') {
      ++pos;
      Label l = nat();
      if (!eat('>')) fail("'>'");
      return diamond(l, unary());
    }
    if (c == 'T') {
      ++pos;
      return top();
    }
    if (c == '(') {
      ++pos;
      Formula f = conj_rule();
      if (!eat(')')) fail("')'");
      return f;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos;
      ++pos;
      while (pos < text.size()) {
        char k = text[pos];
        if ((k >= 'a' && k <= 'z') || (k >= 'A' && k <= 'Z') || (k >= '0' && k <= '9') ||
            k == '_')
          ++pos;
        else
          break;
      }
      return atom(std::string(text.substr(start, pos - start)));
    }
    fail("a formula");
  }

  Formula conj_rule() {
    Formula l = unary();
    if (eat('&')) return conj(std::move(l), conj_rule());
    return l;
  }

  Formula parse_all() {
    Formula f = conj_rule();
    skip_ws();
    if (pos != text.size()) fail("end of input");
    return f;
  }
};

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

Formula parse(std::string_view text) {
  Parser p{text};
  return p.parse_all();
}

}  // namespace trc
