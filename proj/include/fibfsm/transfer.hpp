#pragma once

// Exact-rational transfer-matrix engine for the injectivity argument.
// The three-term recurrence x_{n+1} = -b_n x_n - x_{n-1} is propagated by
//   T_b = ( 0  1 ; -1 -b ),  b in {0,1},
// and for a word w = w_1 ... w_k (time order) the product is
// T_{w_k} ... T_{w_1}.  Vectors with property C (sign change, |y1| < |y2|)
// grow under the rightward blocks {101, 01}; vectors with property F
// (sign change, |y1| > |y2|) grow under the inverse leftward blocks
// {101, 10}.  Every step is checked exactly; a failed check would falsify
// the growth lemmas and is reported as CertificateViolation.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subshift.hpp"
#include "word.hpp"

namespace fibfsm {

using Rational = boost::multiprecision::cpp_rational;

struct TransferVec {
  Rational y1;
  Rational y2;

  bool operator==(const TransferVec&) const = default;
};

inline Rational rational_abs(const Rational& q) { return q < 0 ? -q : q; }

/// y1*y2 < 0 and |y1| < |y2|.
inline bool has_property_C(const TransferVec& v) {
  return v.y1 * v.y2 < 0 && rational_abs(v.y1) < rational_abs(v.y2);
}

/// y1*y2 < 0 and |y1| > |y2|.
inline bool has_property_F(const TransferVec& v) {
  return v.y1 * v.y2 < 0 && rational_abs(v.y1) > rational_abs(v.y2);
}

struct TransferMatrix {
  // row-major: (a b ; c d)
  Rational a, b, c, d;

  Rational det() const { return a * d - b * c; }

  TransferVec apply(const TransferVec& v) const {
    return {a * v.y1 + b * v.y2, c * v.y1 + d * v.y2};
  }

  TransferMatrix operator*(const TransferMatrix& rhs) const {
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
            c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
  }

  /// Inverse of a determinant-1 matrix.
  TransferMatrix inverse() const {
    if (det() != 1)
      throw std::logic_error("TransferMatrix::inverse: determinant != 1");
    return {d, -b, -c, a};
  }

  bool operator==(const TransferMatrix&) const = default;
};

inline TransferMatrix single_matrix(char letter) {
  if (letter == '0')
    return {0, 1, -1, 0};
  if (letter == '1')
    return {0, 1, -1, -1};
  throw std::invalid_argument("single_matrix: letter not in {0,1}");
}

/// Transfer matrix of a block, last letter applied leftmost:
/// T_101 = T_1 T_0 T_1, T_01 = T_1 T_0, T_10 = T_0 T_1.
inline TransferMatrix block_matrix(const BinaryWord& block) {
  const std::string& s = block.str();
  if (s != "101" && s != "01" && s != "10")
    throw std::invalid_argument("block_matrix: block not in {101,01,10}");
  TransferMatrix m{1, 0, 0, 1};
  for (char c : s)
    m = single_matrix(c) * m;
  return m;
}

class CertificateViolation : public std::logic_error {
public:
  explicit CertificateViolation(const std::string& what)
      : std::logic_error(what) {}
};

class InsufficientWord : public std::runtime_error {
public:
  explicit InsufficientWord(const std::string& what)
      : std::runtime_error(what) {}
};

struct GrowthStep {
  TransferVec vec;     // after the block
  Rational guaranteed; // min{|y1+y2|,|y1|} (rightward) resp. the F analogue
};

/// z = T_block y, with the growth properties A-C checked exactly.
/// Precondition: y has property C and block in {101,01}.
inline GrowthStep step_check_right(const TransferVec& y,
                                   const BinaryWord& block) {
  if (!has_property_C(y))
    throw std::invalid_argument("step_check_right: input lacks property C");
  if (block.str() != "101" && block.str() != "01")
    throw std::invalid_argument("step_check_right: block not in {101,01}");
  TransferVec z = block_matrix(block).apply(y);
  Rational gap = std::min(rational_abs(y.y1 + y.y2), rational_abs(y.y1));
  if (!(gap > 0) || rational_abs(z.y2) - rational_abs(y.y2) < gap)
    throw CertificateViolation("property A failed");
  if (rational_abs(z.y1 + z.y2) < rational_abs(y.y1 + y.y2) ||
      rational_abs(z.y1) < rational_abs(y.y1))
    throw CertificateViolation("property B failed");
  if (!has_property_C(z))
    throw CertificateViolation("property C failed");
  return {z, gap};
}

/// z = T_block^{-1} y, with the properties D-F checked exactly.
/// Precondition: y has property F and block in {101,10}.
inline GrowthStep step_check_left(const TransferVec& y,
                                  const BinaryWord& block) {
  if (!has_property_F(y))
    throw std::invalid_argument("step_check_left: input lacks property F");
  if (block.str() != "101" && block.str() != "10")
    throw std::invalid_argument("step_check_left: block not in {101,10}");
  TransferVec z = block_matrix(block).inverse().apply(y);
  Rational gap = std::min(rational_abs(y.y1 + y.y2), rational_abs(y.y2));
  if (!(gap > 0) || rational_abs(z.y1) - rational_abs(y.y1) < gap)
    throw CertificateViolation("property D failed");
  if (rational_abs(z.y1 + z.y2) < rational_abs(y.y1 + y.y2) ||
      rational_abs(z.y2) < rational_abs(y.y2))
    throw CertificateViolation("property E failed");
  if (!has_property_F(z))
    throw CertificateViolation("property F failed");
  return {z, gap};
}

enum class SeedCase { Zero, AlphaZero, BetaZero, SameSign, OppositeSign };

struct GrowthCertificate {
  char achieved_property = 'C';      // 'C' or 'F'
  std::size_t achieved_at_step = 0;  // block index where the property holds
  std::size_t steps_to_bound = 0;    // blocks applied after attainment
  Rational gap;                      // per-block growth at attainment
  Rational final_modulus;            // |y2| (C) resp. |y1| (F) at the end
  std::optional<SeedCase> seed_case; // two-sided runs only
  std::string direction = "rightward";
  std::vector<TransferVec> trajectory; // recorded when requested
};

/// Rightward certificate for a one-sided diagonal p w_1 w_2 ... .
/// Starts from (0,1) for p = eps, (1,-1) for p = "1"; waits for the first
/// attainment of property C, then grows |y2| past `bound` with every step
/// checked.  Needs both block types before attainment can happen.
inline GrowthCertificate certify_one_sided(
    const std::vector<BinaryWord>& blocks, const BinaryWord& prefix,
    const Rational& bound, bool record_trajectory = false) {
  if (bound <= 0)
    throw std::invalid_argument("certify_one_sided: bound must be positive");
  const bool prefixed = prefix.str() == "1";
  if (!prefixed && !prefix.is_empty())
    throw std::invalid_argument("certify_one_sided: prefix not in {eps,1}");

  TransferVec y = prefixed ? TransferVec{1, -1} : TransferVec{0, 1};
  GrowthCertificate cert;
  cert.achieved_property = 'C';
  if (record_trajectory)
    cert.trajectory.push_back(y);

  std::size_t i = 0;
  // phase 1: before property C.  p = eps stalls at +-(0,1) under T_01 and
  // jumps to +-(-1,2) at the first T_101; p = "1" stalls at (1,-1) under
  // T_101 and jumps to (-1,2) at the first T_01.
  for (; i < blocks.size() && !has_property_C(y); ++i) {
    y = block_matrix(blocks[i]).apply(y);
    if (record_trajectory)
      cert.trajectory.push_back(y);
  }
  if (!has_property_C(y))
    throw InsufficientWord(
        "certify_one_sided: property C not attained (blocks exhausted)");
  cert.achieved_at_step = i;
  cert.gap = std::min(rational_abs(y.y1 + y.y2), rational_abs(y.y1));

  for (; i < blocks.size() && rational_abs(y.y2) <= bound; ++i) {
    GrowthStep step = step_check_right(y, blocks[i]);
    y = step.vec;
    ++cert.steps_to_bound;
    if (record_trajectory)
      cert.trajectory.push_back(y);
  }
  if (rational_abs(y.y2) <= bound)
    throw InsufficientWord("certify_one_sided: blocks exhausted before bound");
  cert.final_modulus = rational_abs(y.y2);
  return cert;
}

struct TwoSidedSeed {
  SeedCase seed_case = SeedCase::Zero;
  TransferVec start;   // pair already carrying property C resp. F
  std::string direction; // "rightward", "leftward", or "zero"
  long attain_index = 0; // k with start = (x_k, x_{k+1}), x_0 = alpha
};

/// Entries x_{-4} .. x_5 forced by x_0 = alpha, x_1 = beta when (x_0, x_1)
/// sits on the "01" block in the middle of the motif 101 101 01 101 101.
inline std::array<Rational, 10> two_sided_template(const Rational& alpha,
                                                   const Rational& beta) {
  return {alpha - 2 * beta, beta,  -alpha + beta, -beta,        alpha,
          beta,             -alpha - beta, alpha, alpha + beta, -2 * alpha - beta};
}

/// Case analysis on (alpha, beta) = (x_0, x_1).
inline TwoSidedSeed two_sided_seed(const Rational& alpha,
                                   const Rational& beta) {
  auto t = two_sided_template(alpha, beta);
  if (alpha == 0 && beta == 0)
    return {SeedCase::Zero, {0, 0}, "zero", 0};
  if (alpha == 0)
    return {SeedCase::AlphaZero, {t[0], t[1]}, "leftward", -4}; // (-2b, b)
  if (beta == 0)
    return {SeedCase::BetaZero, {t[8], t[9]}, "rightward", 4}; // (a, -2a)
  if (alpha * beta > 0)
    return {SeedCase::SameSign, {t[5], t[6]}, "rightward", 1}; // (b, -a-b)
  return {SeedCase::OppositeSign, {t[0], t[1]}, "leftward", -4};
}

/// Two-sided certificate: anchor (x_0, x_1) on the central "01" of the
/// motif inside `win`, pick the growth direction by the case analysis and
/// run the checked block steps until the leading modulus exceeds `bound`.
inline GrowthCertificate certify_two_sided(const PotentialWindow& win,
                                           const Rational& alpha,
                                           const Rational& beta,
                                           const Rational& bound,
                                           bool record_trajectory = false) {
  if (alpha == 0 && beta == 0)
    throw std::invalid_argument("certify_two_sided: (0,0) seeds x = 0");
  if (bound <= 0)
    throw std::invalid_argument("certify_two_sided: bound must be positive");

  // index of x_0 within the window: the motif starts at motif_off and the
  // "01" block is its letters 6 and 7
  // anchor at the motif occurrence nearest the window center, so both
  // directions have room to grow
  const std::string& letters = win.letters.str();
  const std::string& motif = central_motif();
  const std::size_t mid = letters.size() / 2;
  std::size_t pos = std::string::npos;
  for (std::size_t i = letters.find(motif); i != std::string::npos;
       i = letters.find(motif, i + 1)) {
    auto dist = [&](std::size_t p) {
      return p > mid ? p - mid : mid - p;
    };
    if (pos == std::string::npos || dist(i) < dist(pos))
      pos = i;
  }
  if (pos == std::string::npos)
    throw InsufficientWord("certify_two_sided: window does not contain motif");
  const long x0 = static_cast<long>(pos) + 6;

  TwoSidedSeed seed = two_sided_seed(alpha, beta);
  GrowthCertificate cert;
  cert.seed_case = seed.seed_case;
  cert.direction = seed.direction;

  TransferVec y = seed.start;
  if (record_trajectory)
    cert.trajectory.push_back(y);

  if (seed.direction == "rightward") {
    cert.achieved_property = 'C';
    if (!has_property_C(y))
      throw std::logic_error("certify_two_sided: seed lacks property C");
    // y = (x_k, x_{k+1}); the blocks start at diagonal entry k+1
    auto from = static_cast<std::size_t>(x0 + seed.attain_index + 1);
    BlockParse parse = parse_right(BinaryWord(letters.substr(from)));
    if (!parse.prefix.is_empty())
      throw std::logic_error("certify_two_sided: unexpected rightward prefix");
    cert.gap = std::min(rational_abs(y.y1 + y.y2), rational_abs(y.y1));
    for (const auto& blk : parse.blocks) {
      if (rational_abs(y.y2) > bound)
        break;
      y = step_check_right(y, blk).vec;
      ++cert.steps_to_bound;
      if (record_trajectory)
        cert.trajectory.push_back(y);
    }
    if (rational_abs(y.y2) <= bound)
      throw InsufficientWord("certify_two_sided: window too short for bound");
    cert.final_modulus = rational_abs(y.y2);
  } else {
    cert.achieved_property = 'F';
    if (!has_property_F(y))
      throw std::logic_error("certify_two_sided: seed lacks property F");
    // y = (x_k, x_{k+1}) with k = -4; leftward blocks cover the diagonal
    // up to entry k inclusive
    auto upto = static_cast<std::size_t>(x0 + seed.attain_index);
    BlockParse parse = parse_left(BinaryWord(letters.substr(0, upto + 1)));
    if (!parse.prefix.is_empty())
      throw std::logic_error("certify_two_sided: unexpected leftward suffix");
    cert.gap = std::min(rational_abs(y.y1 + y.y2), rational_abs(y.y2));
    for (const auto& blk : parse.blocks) {
      if (rational_abs(y.y1) > bound)
        break;
      y = step_check_left(y, blk).vec;
      ++cert.steps_to_bound;
      if (record_trajectory)
        cert.trajectory.push_back(y);
    }
    if (rational_abs(y.y1) <= bound)
      throw InsufficientWord("certify_two_sided: window too short for bound");
    cert.final_modulus = rational_abs(y.y1);
  }
  return cert;
}

/// The worked example: diagonal 1,0,1,1,0,1,0,1,1,0,1,1,0,1,0,1,1 with
/// x_{-1} = 0, x_0 = 1 yields x_0..x_16 = 1,-1,-1,2,-1,-2,3,2,-5,3,5,-8,
/// 3,8,-11,-8,19.  Recomputed and verified on every call.
inline std::vector<long> replay_paper_table() {
  const std::string diag = "10110101101101011";
  const std::vector<long> expected = {1,  -1, -1, 2,  -1, -2, 3,  2, -5,
                                      3,  5,  -8, 3,  8,  -11, -8, 19};
  std::vector<long> x;
  long prev = 0, cur = 1;
  x.push_back(cur);
  for (std::size_t n = 0; n + 1 < expected.size(); ++n) {
    long b = diag[n] - '0';
    long next = -b * cur - prev;
    prev = cur;
    cur = next;
    x.push_back(cur);
  }
  if (x != expected)
    throw std::logic_error("replay_paper_table: mismatch with expected row");
  return x;
}

} // namespace fibfsm
