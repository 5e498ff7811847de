#pragma once
#include <string>
#include <vector>

namespace coliseum {

// Symbolic address over {1..m}: finite prefix plus optional repeating cycle.
// Text form: `prefix(cycle)`, e.g. `21(1)` = (2,1,1,1,...), `(12)` = (1,2,1,2,...).
struct Word {
  std::vector<int> prefix;  // digits 1..m
  std::vector<int> cycle;   // empty = finite word

  bool eventually_periodic() const { return !cycle.empty(); }
  // n-th letter, 0-based; finite words return 0 past the end.
  int letter(size_t n) const {
    if (n < prefix.size()) return prefix[n];
    if (cycle.empty()) return 0;
    return cycle[(n - prefix.size()) % cycle.size()];
  }
  size_t alphabet_max() const;

  // Drop duplicate cycle periods, absorb prefix tails into the cycle.
  Word canonical() const;

  std::string to_string() const;
  static Word parse(const std::string& text);

  bool operator==(const Word&) const = default;
};

// Lexicographic comparison of the infinite expansions (first `horizon` letters).
int lex_compare(const Word& a, const Word& b, size_t horizon = 4096);

}  // namespace coliseum
