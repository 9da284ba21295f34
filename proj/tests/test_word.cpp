#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <fibfsm/word.hpp>

using namespace fibfsm;

// v_1 .. v_55 as displayed in groups 10110-10110-110-...
static const std::string kFirst55 =
    "1011010110110101101011011010110110101101011011010110101";

TEST_CASE("substitute is the homomorphism 0->1, 1->10") {
  CHECK(substitute(BinaryWord("1")).str() == "10");
  CHECK(substitute(BinaryWord("")).str() == "");
  CHECK(substitute(BinaryWord("10110")).str() == "10110101");
  // |phi(w)| = 2 #1s + #0s
  BinaryWord w("1011010110");
  std::size_t ones = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    ones += w[i] == '1';
  CHECK(substitute(w).size() == 2 * ones + (w.size() - ones));
}

TEST_CASE("finite Fibonacci words") {
  CHECK(finite_fibonacci(1).str() == "1");
  CHECK(finite_fibonacci(2).str() == "10");
  CHECK(finite_fibonacci(3).str() == "101");
  CHECK(finite_fibonacci(4).str() == "10110");
  CHECK(finite_fibonacci(5).str() == "10110101");
  CHECK(finite_fibonacci(6).str() == "1011010110110");
  CHECK_THROWS_AS(finite_fibonacci(0), std::invalid_argument);
  for (unsigned k = 1; k <= 20; ++k)
    CHECK(BigInt(finite_fibonacci(k).size()) == fibonacci_number(k));
}

TEST_CASE("recursion, substitution and rotation routes agree") {
  // f_{k+1} = f_k f_{k-1}
  for (unsigned k = 2; k <= 20; ++k)
    CHECK(finite_fibonacci(k + 1) ==
          finite_fibonacci(k) + finite_fibonacci(k - 1));
  // f_k = phi^{k-1}("1")
  BinaryWord iter("1");
  for (unsigned k = 1; k <= 12; ++k) {
    CHECK(iter == finite_fibonacci(k));
    iter = substitute(iter);
  }
  // rotation formula produces the same letters
  BigInt f20 = fibonacci_number(20);
  CHECK(window(1, f20).letters == finite_fibonacci(20));
}

TEST_CASE("v_at boundary and listed values") {
  CHECK(v_at(0) == 0);
  CHECK(v_at(-1) == 1);
  const int expected[10] = {1, 0, 1, 1, 0, 1, 0, 1, 1, 0};
  for (int n = 1; n <= 10; ++n)
    CHECK(v_at(n) == expected[n - 1]);
}

TEST_CASE("window slices") {
  CHECK(window(1, 55).letters.str() == kFirst55);
  CHECK(window(-1, 0).letters.str() == "10");
  CHECK_THROWS_AS(window(3, 2), std::invalid_argument);

  SECTION("mirror consistency on (-8,7)") {
    PotentialWindow w = window(-8, 7);
    for (long n = -8; n <= 7; ++n) {
      if (n == -1 || n == 0)
        continue;
      long m = -1 - n;
      if (m >= -8 && m <= 7)
        CHECK(w.at(n) == w.at(m));
    }
  }
}

TEST_CASE("reverse") {
  CHECK(reverse(BinaryWord("10110")).str() == "01101");
  CHECK(reverse(BinaryWord("")).str() == "");
  const long N = 1000;
  CHECK(reverse(window(1, N).letters) == window(-1 - N, -2).letters);
}

TEST_CASE("two-sided symmetry v_n = v_{-1-n}") {
  PotentialWindow w = window(-10000, 10000);
  for (long n = -10000; n <= 9999; ++n) {
    if (n == -1 || n == 0)
      continue;
    long m = -1 - n;
    if (m < -10000 || m > 10000)
      continue;
    CHECK(w.at(n) == w.at(m));
  }
  CHECK(w.at(-1) == 1);
  CHECK(w.at(0) == 0);
}

TEST_CASE("floor formula matches high-precision rotation formula") {
  using HP = boost::multiprecision::cpp_bin_float_50;
  const HP alpha = (sqrt(HP(5)) - 1) / 2;
  const HP lower = 1 - alpha;
  const HP eps = HP("1e-40");
  const long R = 100000;
  PotentialWindow w = window(-R, R);
  for (long n = -R; n <= R; ++n) {
    HP t = HP(n) * alpha;
    t -= floor(t);
    // exempt evaluations within the float's own error of an endpoint;
    // there the exact path is authoritative
    if (abs(t - lower) < eps || t < eps || t > 1 - eps)
      continue;
    int vf = (t >= lower) ? 1 : 0;
    if (vf != w.at(n)) {
      CAPTURE(n);
      CHECK(vf == w.at(n));
    }
  }
  SUCCEED();
}

TEST_CASE("no 00 and no 111 in any window") {
  PotentialWindow w = window(-5000, 5000);
  CHECK_FALSE(w.letters.contains("00"));
  CHECK_FALSE(w.letters.contains("111"));
}
