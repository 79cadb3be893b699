#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mvml/algebra.hpp"
#include "mvml/kripke.hpp"
#include "mvml/syntax.hpp"

namespace mvml {

/// A word over the digits {0, ..., s-1} read as a number: value plus digit count,
/// so that leading zeros are kept.
struct Numeral {
  Natural value;
  std::size_t length = 1;

  friend bool operator==(const Numeral& a, const Numeral& b) {
    return a.value == b.value && a.length == b.length;
  }
};

struct PCPInstance {
  unsigned long base = 2;
  std::vector<std::pair<Numeral, Numeral>> pairs;

  /// Throws DomainError unless base >= 2, pairs is nonempty and every numeral fits its length.
  void validate() const;
};

/// x followed by y: (x.value * s^|y| + y.value, |x| + |y|).
Numeral concat(const Numeral& x, const Numeral& y, unsigned long s);

struct PCPEncoding {
  FormulaSet gamma;  // five formulas
  Formula phi;
};

/// Largest power expanded into a product chain while encoding.
constexpr unsigned long kMaxEncodedPower = 1UL << 20;

PCPEncoding encode(const PCPInstance& p);

/// Item (3) of the encoding: the disjunction over the pairs.
Formula pair_disjunction(const PCPInstance& p);
/// Disjunct i (1-based) of item (3).
Formula pair_disjunct(const PCPInstance& p, std::size_t i);

/// Concatenations of the x-words and of the y-words along `indices` (1-based).
std::pair<Numeral, Numeral> concatenations(const PCPInstance& p, const std::vector<std::size_t>& indices);

bool verify_solution(const PCPInstance& p, const std::vector<std::size_t>& indices);

enum class ChainAlgebra { StdMV, ExpChain };

/// Chain v1 <- v2 <- ... <- vk (edges v_j -> v_{j-1}) with x, y at v_j the powers
/// a^(x-concatenation up to j), a^(y-concatenation up to j), and z = a. For std-mv,
/// a = r/(r+1) where r is the larger of the two full concatenations; for the power
/// chain a = pow(1). World j-1 is v_j; the top world is the last one.
KripkeModel build_chain_model(const PCPInstance& p, const std::vector<std::size_t>& indices, ChainAlgebra alg);

/// build_chain_model for a verified solution; throws DomainError otherwise.
KripkeModel build_countermodel(const PCPInstance& p, const std::vector<std::size_t>& indices, ChainAlgebra alg);

/// Exponent n with base^n = v, or nullopt if not determined by the values.
std::optional<Natural> recover_exponent(const Algebra& alg, const Value& base, const Value& v);

/// Reads the index sequence off a chain model that globally satisfies the encoding
/// and refutes phi at `top`. Walking up from the successor-free end, takes at each
/// world the least disjunct of item (3) that evaluates to 1 and is consistent with
/// the exponents of x and y there.
std::vector<std::size_t> extract_solution(const PCPInstance& p, const KripkeModel& m, std::size_t top);

/// Every solution of length at most max_len, shortest first, lexicographic within a length.
std::vector<std::vector<std::size_t>> find_solutions(const PCPInstance& p, std::size_t max_len);

}  // namespace mvml
