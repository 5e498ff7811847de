#include "coliseum/word.hpp"

#include <algorithm>

#include "coliseum/errors.hpp"

namespace coliseum {

size_t Word::alphabet_max() const {
  int m = 0;
  for (int d : prefix) m = std::max(m, d);
  for (int d : cycle) m = std::max(m, d);
  return static_cast<size_t>(m);
}

Word Word::canonical() const {
  Word w = *this;
  // minimal cycle period
  if (!w.cycle.empty()) {
    for (size_t p = 1; p <= w.cycle.size() / 2; ++p) {
      if (w.cycle.size() % p) continue;
      bool rep = true;
      for (size_t k = p; k < w.cycle.size() && rep; ++k)
        if (w.cycle[k] != w.cycle[k % p]) rep = false;
      if (rep) {
        w.cycle.resize(p);
        break;
      }
    }
    // absorb prefix tail: a prefix ending with the cycle's last letter is a
    // rotated spelling of the same sequence
    while (!w.prefix.empty() && w.prefix.back() == w.cycle.back()) {
      w.prefix.pop_back();
      std::rotate(w.cycle.begin(), w.cycle.end() - 1, w.cycle.end());
    }
  }
  return w;
}

std::string Word::to_string() const {
  std::string s;
  for (int d : prefix) s += static_cast<char>('0' + d);
  if (!cycle.empty()) {
    s += '(';
    for (int d : cycle) s += static_cast<char>('0' + d);
    s += ')';
  }
  return s;
}

Word Word::parse(const std::string& text) {
  Word w;
  bool in_cycle = false;
  for (char ch : text) {
    if (ch == '(') {
      if (in_cycle) throw ConfigError("bad word syntax: " + text);
      in_cycle = true;
    } else if (ch == ')') {
      if (!in_cycle || w.cycle.empty()) throw ConfigError("bad word syntax: " + text);
      in_cycle = false;
    } else if (ch >= '1' && ch <= '9') {
      (in_cycle ? w.cycle : w.prefix).push_back(ch - '0');
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw ConfigError("bad word character in: " + text);
    }
  }
  if (in_cycle) throw ConfigError("unterminated cycle in word: " + text);
  return w;
}

int lex_compare(const Word& a, const Word& b, size_t horizon) {
  for (size_t n = 0; n < horizon; ++n) {
    int da = a.letter(n), db = b.letter(n);
    if (da != db) return da < db ? -1 : 1;
  }
  return 0;
}

}  // namespace coliseum
