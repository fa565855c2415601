#include <cstdlib>
#include <numeric>
#include <string>

#include "plauslab/error.hpp"
#include "plauslab/rational.hpp"
#include "plauslab/sets.hpp"

namespace plauslab {

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) -> long long {
    if (s.empty()) fail();
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) fail();
    long long v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail();
      if (v > (1LL << 55)) fail();
      v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    long long den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 12) fail();
    std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    long long den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(parse_int(digits), den);
  }
  return Rational(parse_int(text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::vector<int> members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

std::string format_set(Mask m, const std::vector<std::string>& names) {
  std::string s = "{";
  bool first = true;
  for (int i : members(m)) {
    if (!first) s += ",";
    first = false;
    s += i < static_cast<int>(names.size()) ? names[i] : "#" + std::to_string(i);
  }
  return s + "}";
}

int max_worlds() {
  const char* env = std::getenv("PLAUSLAB_MAX_WORLDS");
  if (env == nullptr || *env == '\0') return 12;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw CapacityError("PLAUSLAB_MAX_WORLDS must be a positive integer");
  if (v > 14) throw CapacityError("PLAUSLAB_MAX_WORLDS may not exceed 14");
  return static_cast<int>(v);
}

}  // namespace plauslab
