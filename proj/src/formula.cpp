#include "qlogic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

#include "qlogic/errors.hpp"

namespace qlogic {

struct Formula::Node {
  Connective op;
  std::string name;
  std::vector<Formula> operands;
};

namespace {

const std::string kEmptyName;

}  // namespace

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw InvalidArgument("invalid atom name '" + name + "'");
  return Formula(std::make_shared<const Node>(Node{Connective::Atom, std::move(name), {}}));
}

Formula Formula::negation(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Connective::Not, {}, {std::move(child)}}));
}

Formula Formula::binary(Connective op, Formula left, Formula right) {
  if (op == Connective::Atom || op == Connective::Not) throw InvalidArgument("not a binary connective");
  return Formula(std::make_shared<const Node>(Node{op, {}, {std::move(left), std::move(right)}}));
}

Formula Formula::conjunction(Formula left, Formula right) {
  return binary(Connective::And, std::move(left), std::move(right));
}
Formula Formula::disjunction(Formula left, Formula right) {
  return binary(Connective::Or, std::move(left), std::move(right));
}
Formula Formula::exclusive_or(Formula left, Formula right) {
  return binary(Connective::Xor, std::move(left), std::move(right));
}

Connective Formula::connective() const { return node_->op; }

bool Formula::is_binary() const {
  const auto op = connective();
  return op == Connective::And || op == Connective::Or || op == Connective::Xor;
}

const std::string& Formula::name() const { return is_atom() ? node_->name : kEmptyName; }

const Formula& Formula::child() const {
  if (connective() != Connective::Not) throw InvalidArgument("child() on a non-negation");
  return node_->operands[0];
}

const Formula& Formula::left() const {
  if (!is_binary()) throw InvalidArgument("left() on a non-binary formula");
  return node_->operands[0];
}

const Formula& Formula::right() const {
  if (!is_binary()) throw InvalidArgument("right() on a non-binary formula");
  return node_->operands[1];
}

std::size_t Formula::depth() const {
  switch (connective()) {
    case Connective::Atom: return 1;
    case Connective::Not: return 1 + child().depth();
    default: return 1 + std::max(left().depth(), right().depth());
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.connective() != b.connective()) return false;
  switch (a.connective()) {
    case Connective::Atom: return a.name() == b.name();
    case Connective::Not: return a.child() == b.child();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::conjunction(a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::disjunction(a, b); }
Formula operator^(const Formula& a, const Formula& b) { return Formula::exclusive_or(a, b); }

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_xor();
    skip_space();
    if (pos_ != text_.size()) fail({"'&'", "'|'", "'^'", "end of input"});
    return f;
  }

 private:
  Formula parse_xor() {
    Formula f = parse_or();
    while (accept('^')) f = Formula::exclusive_or(std::move(f), parse_or());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept('|')) f = Formula::disjunction(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept('&')) f = Formula::conjunction(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept('!')) return Formula::negation(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    skip_space();
    if (accept('(')) {
      Formula inner = parse_xor();
      skip_space();
      if (!accept(')')) fail({"'&'", "'|'", "'^'", "')'"});
      return inner;
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Formula::atom(std::string(text_.substr(start, pos_ - start)));
    }
    fail({"identifier", "'!'", "'('"});
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(pos_, std::move(expected), found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char* symbol(Connective op) {
  switch (op) {
    case Connective::And: return " & ";
    case Connective::Or: return " | ";
    case Connective::Xor: return " ^ ";
    default: return "";
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string format(const Formula& f) {
  switch (f.connective()) {
    case Connective::Atom: return f.name();
    case Connective::Not: return "(!" + format(f.child()) + ")";
    default: return "(" + format(f.left()) + symbol(f.connective()) + format(f.right()) + ")";
  }
}

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.connective()) {
      case Connective::Atom:
        if (std::find(out.begin(), out.end(), g.name()) == out.end()) out.push_back(g.name());
        break;
      case Connective::Not: walk(g.child()); break;
      default:
        walk(g.left());
        walk(g.right());
    }
  };
  walk(f);
  return out;
}

}  // namespace qlogic
