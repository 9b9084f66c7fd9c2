#ifndef AMALGAM_SESSION_HPP_
#define AMALGAM_SESSION_HPP_

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "context.hpp"
#include "pipeline.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace amalgam {

namespace detail {

inline std::string trim(std::string s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) {
    return "";
  }
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_commas(std::string const& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cur = trim(cur);
  if (!cur.empty()) {
    out.push_back(cur);
  }
  return out;
}

}  // namespace detail

// Line-oriented amalgam input file:
//   factor1.generators: x
//   factor1.relators: x^4
//   factor2.generators: y
//   factor2.relators: y^6
//   edge.generators: a
//   phi1: a = x^2
//   phi2: a = y^3
// Lists are comma-separated; `#` begins a comment line.
inline AmalgamSpec parse_amalgam_stream(std::istream& is) {
  AmalgamSpec spec;
  std::map<std::string, std::vector<std::string>> raw_relators;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> raw_phi;
  std::string line;
  int lineno = 0;
  auto err = [&](std::string const& msg) {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') {
      continue;
    }
    auto colon = t.find(':');
    if (colon == std::string::npos) {
      err("expected 'key: value'");
    }
    std::string key = detail::trim(t.substr(0, colon));
    std::string val = detail::trim(t.substr(colon + 1));
    if (key == "factor1.generators") {
      spec.factor1.generators = detail::split_commas(val);
    } else if (key == "factor2.generators") {
      spec.factor2.generators = detail::split_commas(val);
    } else if (key == "factor1.relators" || key == "factor2.relators") {
      auto& dst = raw_relators[key];
      auto items = detail::split_commas(val);
      dst.insert(dst.end(), items.begin(), items.end());
    } else if (key == "edge.generators") {
      spec.edge_generators = detail::split_commas(val);
    } else if (key == "phi1" || key == "phi2") {
      for (auto const& item : detail::split_commas(val)) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
          err("expected '<edge-gen> = <word>' in " + key);
        }
        raw_phi[key].push_back({detail::trim(item.substr(0, eq)),
                                detail::trim(item.substr(eq + 1))});
      }
    } else {
      err("unknown key '" + key + "'");
    }
  }
  auto parse_list = [&](std::vector<std::string> const& items,
                        std::vector<std::string> const& alphabet) {
    std::vector<Word> out;
    for (auto const& s : items) {
      out.push_back(parse_word(s, alphabet));
    }
    return out;
  };
  spec.factor1.relators =
      parse_list(raw_relators["factor1.relators"], spec.factor1.generators);
  spec.factor2.relators =
      parse_list(raw_relators["factor2.relators"], spec.factor2.generators);
  spec.phi1.resize(spec.edge_generators.size());
  spec.phi2.resize(spec.edge_generators.size());
  std::vector<bool> have1(spec.edge_generators.size(), false);
  std::vector<bool> have2(spec.edge_generators.size(), false);
  for (auto const& [key, entries] : raw_phi) {
    for (auto const& [name, text] : entries) {
      int idx = -1;
      for (size_t i = 0; i < spec.edge_generators.size(); ++i) {
        if (spec.edge_generators[i] == name) {
          idx = static_cast<int>(i);
        }
      }
      if (idx < 0) {
        throw parse_error(key + " maps unknown edge generator '" + name + "'");
      }
      if (key == "phi1") {
        spec.phi1[idx] = parse_word(text, spec.factor1.generators);
        have1[idx] = true;
      } else {
        spec.phi2[idx] = parse_word(text, spec.factor2.generators);
        have2[idx] = true;
      }
    }
  }
  for (size_t i = 0; i < spec.edge_generators.size(); ++i) {
    if (!have1[i] || !have2[i]) {
      throw parse_error("edge generator '" + spec.edge_generators[i]
                        + "' lacks a phi1 or phi2 image");
    }
  }
  return spec;
}

inline AmalgamSpec parse_amalgam_file(std::string const& path) {
  std::ifstream f(path);
  if (!f) {
    throw parse_error("cannot open '" + path + "'");
  }
  return parse_amalgam_stream(f);
}

// A loaded amalgam plus a cache of built subgroup graphs keyed by the
// generator words as given.
class Session {
 public:
  explicit Session(AmalgamSpec const& spec, long cap = 1000000)
      : ctx_(validate_amalgam(spec, cap)) {}

  Amalgam const& ctx() const { return ctx_; }

  std::vector<Word> parse_generators(std::vector<std::string> const& texts) const {
    std::vector<Word> out;
    auto names = ctx_.global_names();
    for (auto const& t : texts) {
      out.push_back(parse_word(t, names));
    }
    return out;
  }

  SubgroupGraph const& graph_for(std::vector<std::string> const& gen_texts,
                                 BuildOptions const& opts = {}) {
    auto it = cache_.find(gen_texts);
    if (it != cache_.end()) {
      return it->second;
    }
    SubgroupGraph sg = build_subgroup_graph(ctx_, parse_generators(gen_texts),
                                            opts);
    VerifyReport rep = verify_precover(ctx_, sg.graph);
    if (!rep.ok) {
      throw std::logic_error("built graph failed precover verification: "
                             + rep.issues.front());
    }
    return cache_.emplace(gen_texts, std::move(sg)).first->second;
  }

 private:
  Amalgam ctx_;
  std::map<std::vector<std::string>, SubgroupGraph> cache_;
};

}  // namespace amalgam

#endif  // AMALGAM_SESSION_HPP_
