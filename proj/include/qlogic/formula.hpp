#pragma once

// Propositional formulas over named atoms with negation, conjunction,
// disjunction and exclusive disjunction.
//
// Text grammar (whitespace insignificant, all binary operators left-associative):
//   xor     := or  ('^' or)*
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | primary
//   primary := identifier | '(' xor ')'
//   identifier := [A-Za-z][A-Za-z0-9_]*

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qlogic {

enum class Connective { Atom, Not, And, Or, Xor };

/// Immutable formula tree. Copies share structure.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula negation(Formula child);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula exclusive_or(Formula left, Formula right);
  static Formula binary(Connective op, Formula left, Formula right);

  Connective connective() const;
  bool is_atom() const { return connective() == Connective::Atom; }
  bool is_binary() const;

  /// Atom name; empty for compound formulas.
  const std::string& name() const;
  /// Operand of a negation.
  const Formula& child() const;
  const Formula& left() const;
  const Formula& right() const;

  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula operator^(const Formula& a, const Formula& b);

/// Throws ParseError carrying the byte offset and the set of tokens that would have been accepted.
Formula parse(std::string_view text);

/// Fully parenthesized rendering; parse(format(f)) == f.
std::string format(const Formula& f);

/// Atom names in first-occurrence order, without duplicates.
std::vector<std::string> atoms(const Formula& f);

bool is_identifier(std::string_view name);

}  // namespace qlogic
