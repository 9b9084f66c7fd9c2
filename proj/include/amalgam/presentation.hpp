#ifndef AMALGAM_PRESENTATION_HPP_
#define AMALGAM_PRESENTATION_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "word.hpp"

namespace amalgam {

// A finite group presentation gp<generators | relators>. Relators are words
// over this presentation's own generator indices.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int n_gens() const { return static_cast<int>(generators.size()); }

  // Diagnostics for malformed presentations; empty means fine.
  std::vector<std::string> check() const {
    std::vector<std::string> issues;
    std::vector<std::string> seen;
    for (auto const& g : generators) {
      if (g.empty()) {
        issues.push_back("empty generator name");
      }
      if (std::find(seen.begin(), seen.end(), g) != seen.end()) {
        issues.push_back("duplicate generator '" + g + "'");
      }
      seen.push_back(g);
    }
    for (auto const& r : relators) {
      for (auto const& l : r) {
        if (l.gen < 0 || l.gen >= n_gens()) {
          issues.push_back("relator letter outside alphabet");
        }
      }
      if (free_reduce(r).empty()) {
        issues.push_back("relator freely reduces to the empty word");
      }
    }
    return issues;
  }
};

// The raw amalgam input: two factor presentations plus the edge subgroup
// generators Y and their images under phi1/phi2 (words over the respective
// factor alphabets). Validation happens after factor enumeration; see
// context.hpp.
struct AmalgamSpec {
  GroupPresentation factor1;
  GroupPresentation factor2;
  std::vector<std::string> edge_generators;
  std::vector<Word> phi1;  // one word over factor1 per edge generator
  std::vector<Word> phi2;  // one word over factor2 per edge generator

  GroupPresentation const& factor(int i) const {
    return i == 1 ? factor1 : factor2;
  }
};

}  // namespace amalgam

#endif  // AMALGAM_PRESENTATION_HPP_
