#pragma once

// Exact construction of the two-sided Fibonacci word
//   v_n = chi_[1-a,1)(n*a mod 1),  a = (sqrt(5)-1)/2,
// by three routes: the substitution 0->1, 1->10, the recursion
// f_{n+1} = f_n f_{n-1}, and an integer-only evaluation of the
// rotation formula.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace fibfsm {

using BigInt = boost::multiprecision::cpp_int;

/// Finite word over {0,1}, stored as an ASCII string of '0'/'1'.
class BinaryWord {
public:
  BinaryWord() = default;

  explicit BinaryWord(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_)
      if (c != '0' && c != '1')
        throw std::invalid_argument("BinaryWord: letter not in {0,1}");
  }

  static BinaryWord empty() { return BinaryWord{}; }

  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }

  char operator[](std::size_t i) const { return letters_[i]; }

  BinaryWord operator+(const BinaryWord& rhs) const {
    BinaryWord w;
    w.letters_ = letters_ + rhs.letters_;
    return w;
  }

  bool operator==(const BinaryWord& rhs) const = default;
  auto operator<=>(const BinaryWord& rhs) const = default;

  bool contains(const std::string& pattern) const {
    return letters_.find(pattern) != std::string::npos;
  }

private:
  std::string letters_;
};

/// Homomorphic image under 0 -> 1, 1 -> 10.
inline BinaryWord substitute(const BinaryWord& w) {
  std::string out;
  out.reserve(2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == '1')
      out += "10";
    else
      out += '1';
  }
  return BinaryWord(out);
}

/// Finite Fibonacci word f_k (f_1 = "1", f_2 = "10", f_{k+1} = f_k f_{k-1}).
/// |f_k| is the k-th Fibonacci number with F_1 = 1, F_2 = 2.
inline BinaryWord finite_fibonacci(unsigned k) {
  if (k == 0)
    throw std::invalid_argument("finite_fibonacci: k must be >= 1");
  std::string prev = "1", cur = "10";
  if (k == 1)
    return BinaryWord(prev);
  for (unsigned i = 2; i < k; ++i) {
    std::string next = cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return BinaryWord(cur);
}

/// k-th Fibonacci number with the word-length convention F_1=1, F_2=2.
inline BigInt fibonacci_number(unsigned k) {
  if (k == 0)
    throw std::invalid_argument("fibonacci_number: k must be >= 1");
  BigInt a = 1, b = 2;
  if (k == 1)
    return a;
  for (unsigned i = 2; i < k; ++i) {
    BigInt c = a + b;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

namespace detail {

// floor(m * a) for a = (sqrt(5)-1)/2, exactly.
// For m >= 0: floor(m*sqrt(5)) = isqrt(5 m^2) since 5 m^2 is not a square
// for m != 0, hence floor(m*a) = floor((isqrt(5 m^2) - m) / 2).
// For m < 0: m*a is irrational (m != 0), so floor(m*a) = -floor(|m|*a) - 1.
inline BigInt floor_n_alpha(const BigInt& m) {
  if (m == 0)
    return 0;
  if (m > 0) {
    BigInt s = boost::multiprecision::sqrt(BigInt(5 * m * m));
    BigInt d = s - m;
    // d >= 0 here; floor division is plain division
    return d / 2;
  }
  BigInt pos = -m;
  BigInt s = boost::multiprecision::sqrt(BigInt(5 * pos * pos));
  return -((s - pos) / 2) - 1;
}

} // namespace detail

/// v_n of the two-sided Fibonacci word, evaluated exactly as
/// v_n = floor((n+1)a) - floor(na).  Equivalent to the rotation formula:
/// frac(na) >= 1-a  <=>  floor((n+1)a) = floor(na) + 1.
inline int v_at(const BigInt& n) {
  BigInt d = detail::floor_n_alpha(n + 1) - detail::floor_n_alpha(n);
  return static_cast<int>(d);
}

/// Contiguous slice v_l .. v_r of the two-sided Fibonacci word.
struct PotentialWindow {
  BigInt start;
  BinaryWord letters;

  int at(const BigInt& index) const {
    BigInt off = index - start;
    if (off < 0 || off >= BigInt(letters.size()))
      throw std::out_of_range("PotentialWindow::at: index outside window");
    return letters[static_cast<std::size_t>(off)] - '0';
  }
};

inline PotentialWindow window(const BigInt& l, const BigInt& r) {
  if (l > r)
    throw std::invalid_argument("window: l > r");
  BigInt len = r - l + 1;
  if (len > BigInt(1) << 30)
    throw std::invalid_argument("window: range too large");
  std::string s;
  s.reserve(static_cast<std::size_t>(len));
  // one pass of the floor formula: consecutive differences share a term
  BigInt prev = detail::floor_n_alpha(l);
  for (BigInt n = l; n <= r; ++n) {
    BigInt next = detail::floor_n_alpha(n + 1);
    s += static_cast<char>('0' + static_cast<int>(next - prev));
    prev = next;
  }
  return PotentialWindow{l, BinaryWord(std::move(s))};
}

inline BinaryWord reverse(const BinaryWord& w) {
  std::string s(w.str().rbegin(), w.str().rend());
  return BinaryWord(std::move(s));
}

} // namespace fibfsm
