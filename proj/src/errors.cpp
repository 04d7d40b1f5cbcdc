#include "qlogic/errors.hpp"

#include <sstream>

namespace qlogic {

namespace {

std::string wrap_message(double amplitude, double limit) {
  std::ostringstream os;
  os << "wrap-around amplitude " << amplitude << " exceeds limit " << limit
     << "; widen the grid or shorten the evolution time";
  return os.str();
}

std::string parse_message(std::size_t offset, const std::vector<std::string>& expected,
                          const std::string& found) {
  std::ostringstream os;
  os << "syntax error at byte " << offset << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace

WrapAroundError::WrapAroundError(double amplitude, double limit)
    : InvariantViolation(wrap_message(amplitude, limit)), amplitude_(amplitude), limit_(limit) {}

UnboundAtom::UnboundAtom(const std::string& name) : Error("unbound atom '" + name + "'") {}

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error(parse_message(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

}  // namespace qlogic
