#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace swanlab {

// Element of Q/Z, stored as num/den with 0 <= num < den and gcd(num, den) = 1.
struct QZ {
  int64_t num = 0;
  int64_t den = 1;

  QZ() = default;
  QZ(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      den = -den;
      num = -num;
    }
    num %= den;
    if (num < 0) num += den;
    int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  bool is_zero() const { return num == 0; }

  friend QZ operator+(QZ a, QZ b) {
    int64_t l = std::lcm(a.den, b.den);
    return QZ(a.num * (l / a.den) + b.num * (l / b.den), l);
  }
  friend QZ operator-(QZ a) { return QZ(-a.num, a.den); }
  friend QZ operator-(QZ a, QZ b) { return a + (-b); }
  friend QZ operator*(int64_t k, QZ a) { return QZ((k % a.den) * a.num, a.den); }
  friend bool operator==(QZ a, QZ b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(QZ a, QZ b) { return !(a == b); }
  friend bool operator<(QZ a, QZ b) {
    return a.num * b.den < b.num * a.den;
  }

  std::string str() const {
    if (num == 0) return "0";
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace swanlab
