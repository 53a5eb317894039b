#pragma once

// Token-level helpers for the versioned model text format. Doubles travel
// as hex floats so that serialize/deserialize round trips are bit-exact.

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "compsent/models.hpp"

namespace compsent::detail {

inline void put_num(std::ostream& out, double v) {
  char buf[48];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  out.write(buf, r.ptr - buf);
}

inline std::string next_token(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw ModelError("truncated model stream");
  return tok;
}

inline void expect_token(std::istream& in, const std::string& want) {
  std::string got = next_token(in);
  if (got != want)
    throw ModelError("expected '" + want + "', found '" + got + "'");
}

inline double get_num(std::istream& in) {
  std::string tok = next_token(in);
  double v = 0.0;
  auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v,
                           std::chars_format::hex);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
    throw ModelError("bad number '" + tok + "' in model stream");
  return v;
}

inline long get_int(std::istream& in) {
  std::string tok = next_token(in);
  long v = 0;
  auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
    throw ModelError("bad integer '" + tok + "' in model stream");
  return v;
}

inline std::array<double, kNumLabels> softmax3(
    const std::array<double, kNumLabels>& raw) {
  double mx = raw[0];
  for (int k = 1; k < kNumLabels; ++k) mx = std::max(mx, raw[k]);
  std::array<double, kNumLabels> p{};
  double z = 0.0;
  for (int k = 0; k < kNumLabels; ++k) {
    p[k] = std::exp(raw[k] - mx);
    z += p[k];
  }
  for (int k = 0; k < kNumLabels; ++k) p[k] /= z;
  return p;
}

}  // namespace compsent::detail
