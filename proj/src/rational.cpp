#include "nsl/rational.hpp"

#include <cctype>

namespace nsl {

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_parse(const std::string& s) {
  size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  size_t n0 = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? 1 : 0;
  require(all_digits(num, n0, num.size()) && all_digits(den, 0, den.size()), Errc::Schema,
          "malformed rational: '" + s + "'");
  require(mpz_class(den) != 0, Errc::Schema, "zero denominator in rational: '" + s + "'");
  Rat q(num + "/" + den);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

long rat_to_long(const Rat& q) {
  require(rat_is_integer(q), Errc::Domain, "expected integer rational, got " + rat_str(q));
  require(q.get_num().fits_slong_p(), Errc::Domain, "integer out of range: " + rat_str(q));
  return q.get_num().get_si();
}

}  // namespace nsl
