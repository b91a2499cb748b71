#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "doctest.h"

#include "forcing_lab/binary_string.hpp"
#include "forcing_lab/clopen.hpp"
#include "forcing_lab/error.hpp"
#include "forcing_lab/rational.hpp"

namespace forcing_lab::test {

inline BinaryString bs(const char* s) { return BinaryString::parse(s); }
inline Rational q(const char* s) { return Rational::parse(s); }

inline ClopenSet set(std::initializer_list<const char*> gens) {
  std::vector<BinaryString> out;
  for (const char* g : gens) out.push_back(bs(g));
  return ClopenSet::canonicalize(std::move(out));
}

inline std::vector<std::string> strings(const ClopenSet& s) {
  std::vector<std::string> out;
  for (const auto& g : s.generators()) out.push_back(g.to_string());
  return out;
}

// Runs `f` and returns the kind it threw; fails the test if nothing was thrown.
template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

}  // namespace forcing_lab::test

namespace doctest {
template <>
struct StringMaker<forcing_lab::Rational> {
  static String convert(const forcing_lab::Rational& r) { return r.to_string().c_str(); }
};
template <>
struct StringMaker<forcing_lab::ErrorKind> {
  static String convert(forcing_lab::ErrorKind k) { return std::string(forcing_lab::to_string(k)).c_str(); }
};
}  // namespace doctest
