#pragma once

// Subword enumeration for the Fibonacci subshift, hull sampling via
// shifted windows, and the deterministic block partitions
//   rightward: p w1 w2 ...   with p in {eps, 1},  w_i in {101, 01}
//   leftward:  ... w_2 w_1 s with s in {eps, 1},  w_i in {101, 10}
// used by the transfer-matrix growth certificates.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "word.hpp"

namespace fibfsm {

struct SubwordSet {
  std::size_t length = 0;
  std::set<BinaryWord> words;
};

class NotAFibonacciFactor : public std::runtime_error {
public:
  explicit NotAFibonacciFactor(const std::string& what)
      : std::runtime_error(what) {}
};

enum class ParseDirection { rightward, leftward };

/// Result of the block partition.  `prefix` is the anomaly at the parse
/// origin (left end rightward, right end leftward); `partial` is the
/// incomplete block remnant at the far end, excluded from `blocks`.
struct BlockParse {
  BinaryWord prefix;
  std::vector<BinaryWord> blocks; // in direction order
  BinaryWord partial;
  ParseDirection direction = ParseDirection::rightward;

  /// Reassemble the parsed input.
  BinaryWord concatenated() const {
    BinaryWord out;
    if (direction == ParseDirection::rightward) {
      out = prefix;
      for (const auto& b : blocks)
        out = out + b;
      out = out + partial;
    } else {
      out = partial;
      for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
        out = out + *it;
      out = out + prefix;
    }
    return out;
  }
};

/// All subwords of the Fibonacci word of the given length.  Enumerates over
/// a window, then doubles the window and re-enumerates; the two counts must
/// agree (any subword recurs within a bounded gap, so a window of ~20x the
/// length already sees them all).
inline SubwordSet enumerate_subwords(std::size_t length) {
  if (length == 0)
    throw std::invalid_argument("enumerate_subwords: length must be >= 1");
  auto collect = [&](std::size_t width) {
    std::set<BinaryWord> found;
    PotentialWindow w = window(1, BigInt(width));
    const std::string& s = w.letters.str();
    for (std::size_t i = 0; i + length <= s.size(); ++i)
      found.insert(BinaryWord(s.substr(i, length)));
    return found;
  };
  std::size_t w1 = 20 * length + 100;
  auto first = collect(w1);
  auto second = collect(2 * w1);
  if (first.size() != second.size())
    throw std::logic_error("enumerate_subwords: count did not stabilize");
  return SubwordSet{length, std::move(second)};
}

/// (sub_v(1), ..., sub_v(max_length)); equals (2, 3, ..., max_length+1).
inline std::vector<std::size_t> subword_complexity(std::size_t max_length) {
  if (max_length == 0)
    throw std::invalid_argument("subword_complexity: max_length must be >= 1");
  std::vector<std::size_t> counts;
  counts.reserve(max_length);
  for (std::size_t n = 1; n <= max_length; ++n)
    counts.push_back(enumerate_subwords(n).words.size());
  return counts;
}

/// Finite surrogate for a hull element: the window
/// v_{shift-half_width} .. v_{shift+half_width} re-centered at 0.
/// By minimality of the subshift, shifted windows exhaust every finite
/// observation of the hull.
inline PotentialWindow hull_sample(const BigInt& shift,
                                   std::size_t half_width) {
  PotentialWindow w =
      window(shift - BigInt(half_width), shift + BigInt(half_width));
  return PotentialWindow{-BigInt(half_width), w.letters};
}

namespace detail {

inline void reject_non_factor(const std::string& s) {
  if (s.find("00") != std::string::npos)
    throw NotAFibonacciFactor("input contains 00");
  if (s.find("111") != std::string::npos)
    throw NotAFibonacciFactor("input contains 111");
}

} // namespace detail

/// Deterministic left-to-right partition into prefix + {101,01} blocks.
/// Two-symbol lookahead; "11" can only occur at the very start, where it
/// forces prefix "1".  A trailing incomplete block goes into `partial`.
inline BlockParse parse_right(const BinaryWord& w) {
  const std::string& s = w.str();
  detail::reject_non_factor(s);
  BlockParse out;
  out.direction = ParseDirection::rightward;
  std::size_t i = 0;
  if (s.size() >= 2 && s[0] == '1' && s[1] == '1') {
    out.prefix = BinaryWord("1");
    i = 1;
  }
  while (i < s.size()) {
    if (s[i] == '0') {
      // block "01"
      if (i + 1 >= s.size()) {
        out.partial = BinaryWord("0");
        break;
      }
      out.blocks.emplace_back("01");
      i += 2;
    } else {
      // block "101"; the letter after "10" is forced to '1' (no "00")
      if (i + 1 >= s.size()) {
        out.partial = BinaryWord("1");
        break;
      }
      if (s[i + 1] == '1')
        throw std::logic_error("parse_right: 11 at interior block boundary");
      if (i + 2 >= s.size()) {
        out.partial = BinaryWord("10");
        break;
      }
      out.blocks.emplace_back("101");
      i += 3;
    }
  }
  return out;
}

/// Mirror partition proceeding right-to-left with blocks {101,10}.
/// "11" at the right end forces suffix "1" (stored in `prefix`); the
/// incomplete remnant at the left edge goes into `partial`.
inline BlockParse parse_left(const BinaryWord& w) {
  const std::string& s = w.str();
  detail::reject_non_factor(s);
  BlockParse out;
  out.direction = ParseDirection::leftward;
  // j = index one past the rightmost unconsumed letter
  std::size_t j = s.size();
  if (s.size() >= 2 && s[j - 1] == '1' && s[j - 2] == '1') {
    out.prefix = BinaryWord("1");
    --j;
  }
  while (j > 0) {
    if (s[j - 1] == '0') {
      // block "10"; '0' is always preceded by '1'
      if (j == 1) {
        out.partial = BinaryWord("0");
        break;
      }
      out.blocks.emplace_back("10");
      j -= 2;
    } else {
      // block "101"
      if (j == 1) {
        out.partial = BinaryWord("1");
        break;
      }
      if (s[j - 2] == '1')
        throw std::logic_error("parse_left: 11 at interior block boundary");
      if (j == 2) {
        out.partial = BinaryWord("01");
        break;
      }
      out.blocks.emplace_back("101");
      j -= 3;
    }
  }
  return out;
}

inline const std::string& central_motif() {
  static const std::string motif = "10110101101101"; // 101 101 01 101 101
  return motif;
}

/// Offset of the occurrence of the motif 101 101 01 101 101 nearest to
/// index 0 in the Fibonacci word, verified letter-for-letter.
inline BigInt central_motif_locate() {
  const std::string& motif = central_motif();
  const long radius = 200;
  PotentialWindow w = window(-radius, radius);
  const std::string& s = w.letters.str();
  long best = 0;
  bool found = false;
  for (std::size_t i = 0; i + motif.size() <= s.size(); ++i) {
    if (s.compare(i, motif.size(), motif) == 0) {
      long start = static_cast<long>(i) - radius;
      if (!found || std::abs(start) < std::abs(best)) {
        best = start;
        found = true;
      }
    }
  }
  if (!found)
    throw std::logic_error("central_motif_locate: motif not found near 0");
  PotentialWindow check =
      window(best, best + static_cast<long>(motif.size()) - 1);
  if (check.letters.str() != motif)
    throw std::logic_error("central_motif_locate: verification failed");
  return best;
}

} // namespace fibfsm
