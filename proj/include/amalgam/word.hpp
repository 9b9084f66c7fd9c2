#ifndef AMALGAM_WORD_HPP_
#define AMALGAM_WORD_HPP_

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace amalgam {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct enumeration_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A single signed generator. `gen` indexes into whichever alphabet the word
// was declared over (factor-local or amalgam-global).
struct Letter {
  int gen;
  int sign;  // +1 or -1

  friend bool operator==(Letter const& a, Letter const& b) {
    return a.gen == b.gen && a.sign == b.sign;
  }
  friend bool operator!=(Letter const& a, Letter const& b) { return !(a == b); }
  friend bool operator<(Letter const& a, Letter const& b) {
    return a.gen != b.gen ? a.gen < b.gen : a.sign < b.sign;
  }
  Letter inverse() const { return Letter{gen, -sign}; }
};

using Word = std::vector<Letter>;

inline Word inverse(Word const& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    r.push_back(it->inverse());
  }
  return r;
}

inline Word concat(Word const& a, Word const& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Cancel adjacent letter/inverse pairs until none remain.
inline Word free_reduce(Word const& w) {
  Word out;
  out.reserve(w.size());
  for (Letter const& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Word cyclic_reduce(Word const& w) {
  Word r = free_reduce(w);
  while (r.size() >= 2 && r.front().gen == r.back().gen
         && r.front().sign == -r.back().sign) {
    r.erase(r.begin());
    r.pop_back();
  }
  return r;
}

namespace detail {

inline int find_generator(std::vector<std::string> const& names,
                          std::string const& tok) {
  for (int i = 0; i < static_cast<int>(names.size()); ++i) {
    if (names[i] == tok) {
      return i;
    }
  }
  return -1;
}

}  // namespace detail

// Word grammar: whitespace-separated tokens, each `name`, `name^k` or
// `name^-k`. Powers expand eagerly (x^3 -> x x x, x^-2 -> x^-1 x^-1).
inline Word parse_word(std::string const& text,
                       std::vector<std::string> const& alphabet) {
  Word out;
  size_t i = 0;
  auto const n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i >= n) {
      break;
    }
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    std::string tok = text.substr(i, j - i);
    i = j;

    std::string name = tok;
    long exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string es = tok.substr(caret + 1);
      if (es.empty() || es == "-" || es == "+") {
        throw parse_error("malformed exponent in token '" + tok + "'");
      }
      char* end = nullptr;
      exp = std::strtol(es.c_str(), &end, 10);
      if (end == nullptr || *end != '\0') {
        throw parse_error("malformed exponent in token '" + tok + "'");
      }
    }
    if (name.empty()) {
      throw parse_error("empty generator name in token '" + tok + "'");
    }
    int gen = detail::find_generator(alphabet, name);
    if (gen < 0) {
      throw parse_error("unknown generator '" + name + "'");
    }
    int sign = exp >= 0 ? +1 : -1;
    for (long k = 0; k < (exp >= 0 ? exp : -exp); ++k) {
      out.push_back(Letter{gen, sign});
    }
  }
  return out;
}

// Serialize with run-length powers; parse(word_str(w)) == w.
inline std::string word_str(Word const& w,
                            std::vector<std::string> const& alphabet) {
  if (w.empty()) {
    return "";
  }
  std::string out;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) {
      ++j;
    }
    long run = static_cast<long>(j - i) * w[i].sign;
    if (!out.empty()) {
      out += ' ';
    }
    out += alphabet[w[i].gen];
    if (run != 1) {
      out += '^';
      out += std::to_string(run);
    }
    i = j;
  }
  return out;
}

}  // namespace amalgam

#endif  // AMALGAM_WORD_HPP_
