#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace tailent {

inline double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// 64-bit FNV-1a, used for config hashes in CSV output.
unsigned long long fnv1a(const std::string& s);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace tailent
