#include <gtest/gtest.h>

#include <random>
#include <string>

#include "qlogic/errors.hpp"
#include "qlogic/formula.hpp"

namespace qlogic {
namespace {

const Formula P1 = Formula::atom("P1");
const Formula P2 = Formula::atom("P2");
const Formula Q = Formula::atom("Q");

TEST(Parse, Examples) {
  EXPECT_EQ(parse("P1 ^ P2"), P1 ^ P2);
  EXPECT_EQ(parse("!Q | (P1 & P2)"), !Q | (P1 & P2));
  EXPECT_EQ(parse("((A))"), Formula::atom("A"));
  EXPECT_EQ(parse("(!Q | P1) & (!Q | P2)"), (!Q | P1) & (!Q | P2));
}

TEST(Parse, PrecedenceAndAssociativity) {
  const Formula a = Formula::atom("a"), b = Formula::atom("b"), c = Formula::atom("c");
  EXPECT_EQ(parse("a | b & c"), a | (b & c));
  EXPECT_EQ(parse("a ^ b | c"), a ^ (b | c));
  EXPECT_EQ(parse("!a & b"), (!a) & b);
  EXPECT_EQ(parse("a & b & c"), (a & b) & c);
  EXPECT_EQ(parse("a ^ b ^ c"), (a ^ b) ^ c);
  EXPECT_EQ(parse("!!a"), !(!a));
  EXPECT_EQ(parse("  a\t&\nb "), a & b);
  EXPECT_EQ(parse("x_1"), Formula::atom("x_1"));
}

TEST(Parse, StructureAccessors) {
  const Formula f = parse("!Q | (P1 & P2)");
  EXPECT_EQ(f.connective(), Connective::Or);
  EXPECT_EQ(f.left().connective(), Connective::Not);
  EXPECT_EQ(f.left().child().name(), "Q");
  EXPECT_EQ(f.right().right().name(), "P2");
  EXPECT_EQ(f.depth(), 3u);
  EXPECT_TRUE(f.right().left().is_atom());
  EXPECT_TRUE(f.is_binary());
}

struct BadInput {
  std::string text;
  std::size_t offset;
  std::vector<std::string> expected;
};

TEST(Parse, ErrorsCarryOffsetAndExpectedTokens) {
  const std::vector<std::string> operand{"identifier", "'!'", "'('"};
  const std::vector<BadInput> cases{
      {"", 0, operand},
      {"P1 &", 4, operand},
      {"P1 P2", 3, {"'&'", "'|'", "'^'", "end of input"}},
      {"(P1 | P2", 8, {"'&'", "'|'", "'^'", "')'"}},
      {"P1 ^ 2", 5, operand},
      {")", 0, operand},
      {"P1 + P2", 3, {"'&'", "'|'", "'^'", "end of input"}},
      {"!", 1, operand},
  };
  for (const auto& c : cases) {
    try {
      parse(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.offset(), c.offset) << c.text;
      EXPECT_EQ(e.expected(), c.expected) << c.text;
    }
  }
}

TEST(Format, Examples) {
  EXPECT_EQ(format(P1 ^ P2), "(P1 ^ P2)");
  EXPECT_EQ(format(!Q), "(!Q)");
  const Formula a = Formula::atom("A"), b = Formula::atom("B"), c = Formula::atom("C");
  EXPECT_EQ(format((a | b) & c), "((A | B) & C)");
  EXPECT_EQ(format(a), "A");
}

TEST(Atoms, FirstOccurrenceOrder) {
  EXPECT_EQ(atoms(parse("P1 ^ P2")), (std::vector<std::string>{"P1", "P2"}));
  EXPECT_EQ(atoms(parse("!Q | (P1 & P2)")), (std::vector<std::string>{"Q", "P1", "P2"}));
  EXPECT_EQ(atoms(parse("A & A")), (std::vector<std::string>{"A"}));
}

TEST(Atom, RejectsBadIdentifiers) {
  EXPECT_THROW(Formula::atom(""), InvalidArgument);
  EXPECT_THROW(Formula::atom("1x"), InvalidArgument);
  EXPECT_THROW(Formula::atom("a b"), InvalidArgument);
  EXPECT_TRUE(is_identifier("Alive_2"));
  EXPECT_FALSE(is_identifier("_x"));
}

Formula random_formula(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> names{"P1", "P2", "Q", "DEAD", "ALIVE", "x_9"};
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 0);
  switch (pick(rng)) {
    case 0: return Formula::atom(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)]);
    case 1: return !random_formula(rng, depth - 1);
    case 2: return random_formula(rng, depth - 1) & random_formula(rng, depth - 1);
    case 3: return random_formula(rng, depth - 1) | random_formula(rng, depth - 1);
    default: return random_formula(rng, depth - 1) ^ random_formula(rng, depth - 1);
  }
}

// Minimal rendering that relies on precedence; parsing it must give back the same tree.
std::string minimal(const Formula& f, int parent_level) {
  auto level = [](Connective op) {
    switch (op) {
      case Connective::Xor: return 1;
      case Connective::Or: return 2;
      case Connective::And: return 3;
      default: return 4;
    }
  };
  switch (f.connective()) {
    case Connective::Atom: return f.name();
    case Connective::Not: return "!" + minimal(f.child(), 4);
    default: {
      const int me = level(f.connective());
      const char* op = f.connective() == Connective::And ? " & " : f.connective() == Connective::Or ? " | " : " ^ ";
      // Left-associative: the right operand needs parentheses at equal level.
      std::string text = minimal(f.left(), me) + op + minimal(f.right(), me + 1);
      return me < parent_level ? "(" + text + ")" : text;
    }
  }
}

TEST(RoundTrip, RandomTrees) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const Formula f = random_formula(rng, 8);
    EXPECT_LE(f.depth(), 9u);
    EXPECT_EQ(parse(format(f)), f);
    EXPECT_EQ(parse(minimal(f, 0)), f) << minimal(f, 0);
  }
}

}  // namespace
}  // namespace qlogic
