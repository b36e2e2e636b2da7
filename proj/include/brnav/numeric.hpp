#ifndef BRNAV_NUMERIC_HPP
#define BRNAV_NUMERIC_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>

namespace brnav {

// splitmix64 finalizer (Vigna). Used for seed derivation and stream mixing.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Order-sensitive combine of two 64-bit values through the splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 12) + (a >> 4)));
}

// log(sum_k exp(args[k])), max-shifted so large magnitudes do not overflow.
// Serial fixed-order accumulation; result is identical across thread counts.
inline double log_sum_exp(std::span<const double> args) {
  if (args.empty()) {
    throw std::invalid_argument("log_sum_exp: empty input");
  }
  const double max_arg = *std::max_element(args.begin(), args.end());
  double sum = 0.0;
  for (const double a : args) {
    sum += std::exp(a - max_arg);
  }
  return max_arg + std::log(sum);
}

// 9 significant digits, the precision used in all emitted data files.
inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Shortest representation that round-trips exactly; used for config dumps.
inline std::string format_exact(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw std::runtime_error("format_exact: conversion failed");
  }
  return std::string(buf, ptr);
}

// FNV-1a over bytes; stable content fingerprint for output provenance.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace brnav

#endif  // BRNAV_NUMERIC_HPP
