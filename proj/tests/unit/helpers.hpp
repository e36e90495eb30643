#pragma once

#include <cmath>
#include <string>

#include "nlkpp/error.hpp"

// Code of the nlkpp::Error thrown by f, or "" when it returns normally.
template <class F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const nlkpp::Error& e) {
    return e.code();
  }
  return "";
}

template <class F>
nlkpp::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const nlkpp::Error& e) {
    return e.kind();
  }
  return nlkpp::ErrorKind::numerical;
}

// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}
