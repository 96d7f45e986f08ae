#include <functional>
#include <random>

#include "doctest.h"
#include "swanlab/brauer.hpp"
#include "swanlab/errors.hpp"

using namespace swanlab;

namespace {

LocalElem random_unit(const LocalFieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    std::vector<int64_t> a(F->e() * F->f());
    for (auto& c : a) c = (int64_t)(rng() % (uint64_t)F->modulus());
    auto x = LocalElem::from_coeffs(F, a, F->default_precision());
    if (x.is_unit()) return x;
  }
}

LocalElem random_nonzero(const LocalFieldPtr& F, std::mt19937_64& rng) {
  return random_unit(F, rng).mul_pi_pow((int)(rng() % 3));
}

std::string err_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

// Closed form over Q_2: (2^a u, 2^b v) = (-1)^{eps(u)eps(v) + a w(v) + b w(u)}.
QZ hilbert_Q2(long long x, long long y) {
  auto split = [](long long n, int& v) {
    v = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++v;
    }
    return n;
  };
  auto eps = [](long long u) { return (int)((((u - 1) / 2) % 2 + 2) % 2); };
  auto omega = [](long long u) {
    long long r = ((u % 8) + 8) % 8;
    return (int)(((r * r - 1) / 8) % 2);
  };
  int a, b;
  long long u = split(x, a), v = split(y, b);
  return QZ((eps(u) * eps(v) + a * omega(v) + b * omega(u)) % 2, 2);
}

QZ inv_of(const LocalElem& a, const LocalElem& b, int s) {
  LocalSymbolSum S{a.field(), {{a, b, s}}, std::nullopt};
  InvValue v = invariant(S);
  REQUIRE(v.kind == InvValue::Kind::exact);
  return v.value;
}

}  // namespace

TEST_CASE("hilbert2 matches the closed form over Q_2") {
  auto Q2 = LocalField::parse("Q2");
  const long long vals[] = {-1, 2, 3, 5, 6, 7, -2, 10, 12, -5, 14, 15, -6, 24, 40};
  for (long long x : vals)
    for (long long y : vals) {
      auto a = LocalElem::from_int(Q2, x), b = LocalElem::from_int(Q2, y);
      CAPTURE(x);
      CAPTURE(y);
      CHECK(hilbert2(a, b).value == hilbert_Q2(x, y));
      CHECK(symbol_invariant(a, b, 1).value == hilbert_Q2(x, y));
    }
}

TEST_CASE("hilbert2 agrees with the Steinberg pairing for p = 2") {
  std::mt19937_64 rng(11);
  for (const char* tag : {"Q2i", "Q2c", "Q2z8"}) {
    auto K = LocalField::parse(tag);
    for (int it = 0; it < 40; ++it) {
      auto a = random_nonzero(K, rng), b = random_nonzero(K, rng);
      CAPTURE(tag);
      CHECK(hilbert2(a, b).value == symbol_invariant(a, b, 1).value);
    }
  }
}

TEST_CASE("pairing axioms on fresh samples") {
  std::mt19937_64 rng(29);
  for (auto [tag, s] : {std::pair{"Q3z3", 1}, {"Q5z5", 1}, {"Q3q", 1}, {"Q2i", 2}, {"Q2z8", 2}}) {
    auto K = LocalField::parse(tag);
    CAPTURE(tag);
    for (int it = 0; it < 20; ++it) {
      auto x = random_nonzero(K, rng), y = random_nonzero(K, rng), z = random_nonzero(K, rng);
      auto one = LocalElem::one(K);
      if (!(one - x).is_zero() && (one - x).valuation() < 4) CHECK(inv_of(x, one - x, s).is_zero());
      CHECK(inv_of(x, -x, s).is_zero());
      CHECK(inv_of(x, y * z, s) == inv_of(x, y, s) + inv_of(x, z, s));
      CHECK(inv_of(x, y, s) == -inv_of(y, x, s));
    }
  }
}

TEST_CASE("constructed norms are trivial") {
  std::mt19937_64 rng(5);
  auto K = LocalField::parse("Q3z3");
  for (int it = 0; it < 25; ++it) {
    auto a = random_nonzero(K, rng);
    std::vector<LocalElem> c = {random_unit(K, rng), random_nonzero(K, rng), random_nonzero(K, rng)};
    // Norm of c0 + c1 t + c2 t^2 with t^3 = a.
    std::vector<std::vector<LocalElem>> M = {
        {c[0], a * c[2], a * c[1]}, {c[1], c[0], a * c[2]}, {c[2], c[1], c[0]}};
    auto b = determinant(M);
    if (b.is_zero()) continue;
    CHECK(norm_triviality(a, b));
  }
  auto Q2i = LocalField::parse("Q2i");
  for (int it = 0; it < 25; ++it) {
    auto a = random_nonzero(Q2i, rng), c0 = random_unit(Q2i, rng), c1 = random_nonzero(Q2i, rng);
    auto b = c0 * c0 - a * c1 * c1;
    if (b.is_zero()) continue;
    CHECK(hilbert2(a, b).is_trivial());
    CHECK(norm_triviality(a, b));
  }
}

TEST_CASE("unramified reference is a non-norm") {
  auto Q2 = LocalField::parse("Q2");
  auto u = unramified_reference(Q2, 1);
  auto r = u.coeffs()[0] % 8;
  CHECK(r == 5);
  CHECK(hilbert2(u, LocalElem::pi(Q2)).value == QZ(1, 2));
  for (auto [tag, s] : {std::pair{"Q3z3", 1}, {"Q2i", 2}, {"Q5z5", 1}}) {
    auto K = LocalField::parse(tag);
    auto v = unramified_reference(K, s);
    CAPTURE(tag);
    CHECK(v.is_unit());
    CHECK(!norm_triviality(v, LocalElem::pi(K)));
    CHECK(inv_of(v, LocalElem::pi(K), s) == QZ(1, K->p() == 2 ? 4 : K->p()));
    CHECK(inv_of(v, LocalElem::from_int(K, 1) + LocalElem::pi(K), s) == QZ());
  }
  // Both constructions agree where both exist.
  for (const char* tag : {"Q3z3", "Q2i"}) {
    auto K = LocalField::parse(tag);
    CAPTURE(tag);
    auto h = hilbert90_reference(K, 1);
    CHECK(inv_of(h, LocalElem::pi(K), 1) == QZ(1, K->p()));
    CHECK(inv_of(h, unramified_reference(K, 1), 1) == QZ());
  }
}

TEST_CASE("symbol sums and specialisation") {
  auto K = LocalField::parse("Q2i");
  auto A = BrauerClass::parse("1 + 2*u1, pi, 2; u1, u2, 2", K, 2);
  REQUIRE(A.terms.size() == 2);
  CHECK(multiply_by_p(A).is_zero());
  auto P = std::vector<LocalElem>{LocalElem::from_int(K, 3), LocalElem::from_int(K, 5)};
  auto S = specialize(A, P);
  CHECK(S.terms.size() == 2);
  CHECK(invariant(class_difference(S, S)).is_trivial());
  auto Z = std::vector<LocalElem>{LocalElem::from_int(K, 0), LocalElem::from_int(K, 5)};
  CHECK(err_code([&] { specialize(A, Z); }) == "zero-at-point");
  auto B = BrauerClass::parse("1, 1/u1, 2", K, 1);
  CHECK(err_code([&] { specialize(B, Z); }) == "pole-at-point");
  CHECK(err_code([&] { invariant(S, 0); }) == "undecided");
  CHECK(err_code([&] { BrauerClass::parse("u1, u2, 6", K, 2); }) == "parse-error");
}

TEST_CASE("missing roots of unity are reported") {
  auto Q3 = LocalField::parse("Q3");
  auto a = LocalElem::from_int(Q3, 2), b = LocalElem::from_int(Q3, 3);
  CHECK(err_code([&] { symbol_invariant(a, b, 1); }) == "missing-root-of-unity");
  auto Q2i = LocalField::parse("Q2i");
  CHECK(err_code([&] { symbol_invariant(LocalElem::from_int(Q2i, 3), LocalElem::pi(Q2i), 3); }) ==
        "missing-root-of-unity");
}
