// Command-line driver: build subgroup graphs of an amalgam of finite groups
// and answer membership / freeness / index / presentation / separability
// queries from them.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amalgam/decisions.hpp"
#include "amalgam/normal_form.hpp"
#include "amalgam/pipeline.hpp"
#include "amalgam/separability.hpp"
#include "amalgam/session.hpp"
#include "amalgam/subgroup_presentation.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string file;
  std::vector<std::string> gens;
  std::string word;
  std::string exclude;
  std::string format = "text";
  std::string out_dir = ".";
  std::string name = "subgroup";
  bool dot = false;
  bool trace = false;
  bool raw = false;
  bool verbose = false;
  long coset_cap = 1000000;
};

bool json_mode(Options const& o) { return o.format == "json-lines"; }

void emit(Options const& o, json j, std::string const& text) {
  if (json_mode(o)) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
}

void write_file(std::string const& path, std::string const& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  f << content;
}

int run_build(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& ctx = session.ctx();
  amalgam::BuildOptions bo;
  bo.trace = o.trace;
  amalgam::SubgroupGraph sg =
      amalgam::build_subgroup_graph(ctx, session.parse_generators(o.gens), bo);
  auto names = ctx.global_names();
  std::filesystem::create_directories(o.out_dir);
  std::string base = o.out_dir + "/" + o.name;
  write_file(base + ".graph", amalgam::to_plain(sg.graph, names));
  if (o.dot) {
    write_file(base + ".dot", amalgam::to_dot(sg.graph, names));
  }
  for (size_t i = 0; i < sg.trace.size(); ++i) {
    write_file(base + ".trace" + std::to_string(i + 1) + "-"
                   + sg.trace[i].first + ".dot",
               amalgam::to_dot(sg.trace[i].second, names));
  }
  amalgam::ChromaticReport rep = amalgam::classify_chromatic(sg.graph);
  json j{{"query", "build"},
         {"vertices", sg.graph.n_vertices()},
         {"edges", sg.graph.n_edges()},
         {"bichromatic", rep.vb.size()},
         {"monochromatic_1", rep.vm1.size()},
         {"monochromatic_2", rep.vm2.size()},
         {"graph_file", base + ".graph"}};
  emit(o, j,
       "vertices: " + std::to_string(sg.graph.n_vertices())
           + "\nedges: " + std::to_string(sg.graph.n_edges())
           + "\nbichromatic: " + std::to_string(rep.vb.size())
           + "\nmonochromatic(1): " + std::to_string(rep.vm1.size())
           + "\nmonochromatic(2): " + std::to_string(rep.vm2.size())
           + "\nwrote " + base + ".graph");
  return 0;
}

int run_member(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& sg = session.graph_for(o.gens);
  amalgam::Word w = amalgam::parse_word(o.word, session.ctx().global_names());
  bool in = amalgam::is_member(session.ctx(), sg, w);
  emit(o, json{{"query", "member"}, {"word", o.word}, {"member", in}},
       in ? "yes" : "no");
  return 0;
}

int run_free(Options const& o, bool torsion) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& sg = session.graph_for(o.gens);
  bool f = torsion ? amalgam::is_torsion_free(session.ctx(), sg)
                   : amalgam::is_free(session.ctx(), sg);
  std::string key = torsion ? "torsion_free" : "free";
  emit(o, json{{"query", key}, {key, f}}, f ? "yes" : "no");
  return 0;
}

int run_index(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& ctx = session.ctx();
  auto const& sg = session.graph_for(o.gens);
  int witness = -1;
  long idx = amalgam::subgroup_index(ctx, sg, &witness);
  if (idx < 0) {
    json j{{"query", "index"}, {"index", "infinite"},
           {"witness_vertex", witness}};
    std::string text = "infinite (witness: v" + std::to_string(witness) + ")";
    if (o.verbose) {
      json esc = json::array();
      for (auto const& w : amalgam::escape_witness(ctx, sg, witness)) {
        std::string s = amalgam::word_str(w, ctx.global_names());
        esc.push_back(s);
        text += "\nescaping element: " + s;
      }
      j["escaping_elements"] = esc;
    }
    emit(o, j, text);
  } else {
    emit(o, json{{"query", "index"}, {"index", idx}}, std::to_string(idx));
  }
  return 0;
}

int run_present(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& ctx = session.ctx();
  auto const& sg = session.graph_for(o.gens);
  amalgam::SubgroupPresentation p = amalgam::compute_presentation(ctx, sg);
  if (!o.raw) {
    p = amalgam::tietze_simplify(p);
  }
  auto names = ctx.global_names();
  if (json_mode(o)) {
    json gens = json::array();
    for (size_t i = 0; i < p.gen_names.size(); ++i) {
      gens.push_back(json{{"name", p.gen_names[i]},
                          {"word", amalgam::word_str(p.gen_defs[i], names)}});
    }
    json rels = json::array();
    for (auto const& r : p.relators) {
      rels.push_back(amalgam::word_str(r, p.gen_names));
    }
    std::cout << json{{"query", "present"},
                      {"generators", gens},
                      {"relators", rels}}
                     .dump()
              << "\n";
  } else {
    std::cout << amalgam::presentation_str(p) << "\n";
    for (size_t i = 0; i < p.gen_names.size(); ++i) {
      std::cout << p.gen_names[i] << " = "
                << amalgam::word_str(p.gen_defs[i], names) << "\n";
    }
  }
  return 0;
}

int run_separate(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& ctx = session.ctx();
  auto const& sg = session.graph_for(o.gens);
  amalgam::Word g = amalgam::parse_word(o.exclude, ctx.global_names());
  amalgam::SeparatingSubgroup k = amalgam::separate(ctx, sg, g);
  auto names = ctx.global_names();
  std::filesystem::create_directories(o.out_dir);
  std::string base = o.out_dir + "/" + o.name + "-separating";
  write_file(base + ".graph", amalgam::to_plain(k.cover, names));
  write_file(base + ".dot", amalgam::to_dot(k.cover, names));
  json j{{"query", "separate"},
         {"exclude", o.exclude},
         {"index", k.index},
         {"graph_file", base + ".graph"}};
  emit(o, j,
       "index: " + std::to_string(k.index) + "\nchecks:"
           + "\n  cover is X-saturated: yes"
           + "\n  cover is a precover: yes"
           + "\n  subgroup generators loop at the basepoint: yes"
           + "\n  excluded word does not loop: yes"
           + "\n  subgroup graph embeds injectively: yes"
           + "\nwrote " + base + ".graph and " + base + ".dot");
  return 0;
}

int run_export_dot(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& sg = session.graph_for(o.gens);
  std::string dot = amalgam::to_dot(sg.graph, session.ctx().global_names());
  if (o.name == "-") {
    std::cout << dot;
  } else {
    std::filesystem::create_directories(o.out_dir);
    write_file(o.out_dir + "/" + o.name + ".dot", dot);
  }
  return 0;
}

int run_info(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& ctx = session.ctx();
  json j{{"query", "info"},
         {"order_factor1", ctx.g1.order()},
         {"order_factor2", ctx.g2.order()},
         {"order_edge_subgroup", ctx.A.order()}};
  std::string text = "factor1 order: " + std::to_string(ctx.g1.order())
                     + "\nfactor2 order: " + std::to_string(ctx.g2.order())
                     + "\nedge subgroup order: "
                     + std::to_string(ctx.A.order()) + "\ncase tags:";
  json tags = json::array();
  for (auto const& t : ctx.tags.tags()) {
    tags.push_back(t);
    text += " " + t;
  }
  j["tags"] = tags;
  if (!o.word.empty()) {
    amalgam::Word w = amalgam::parse_word(o.word, ctx.global_names());
    amalgam::NormalWord nf = amalgam::normal_form(ctx, w);
    std::string s = amalgam::normal_word_str(ctx, nf);
    j["word"] = o.word;
    j["normal_form"] = s;
    j["syllable_length"] = amalgam::syllable_length(ctx, w);
    text += "\nnormal form: " + s;
    text += "\nsyllable length: "
            + std::to_string(amalgam::syllable_length(ctx, w));
  }
  if (!o.gens.empty()) {
    auto const& sg = session.graph_for(o.gens);
    j["vertices"] = sg.graph.n_vertices();
    j["edges"] = sg.graph.n_edges();
    text += "\ngraph vertices: " + std::to_string(sg.graph.n_vertices());
    text += "\ngraph edges: " + std::to_string(sg.graph.n_edges());
  }
  emit(o, j, text);
  return 0;
}

int run_verify(Options const& o) {
  amalgam::Session session(amalgam::parse_amalgam_file(o.file), o.coset_cap);
  auto const& ctx = session.ctx();
  auto const& sg = session.graph_for(o.gens);
  amalgam::VerifyReport rep = amalgam::verify_precover(ctx, sg.graph);
  bool members = true;
  for (auto const& w : sg.generators) {
    members = members && amalgam::is_member(ctx, sg, w);
  }
  json j{{"query", "verify"},
         {"precover", rep.ok},
         {"generators_loop", members}};
  std::string text = std::string("precover: ") + (rep.ok ? "yes" : "no")
                     + "\ngenerators loop: " + (members ? "yes" : "no");
  for (auto const& issue : rep.issues) {
    text += "\n  issue: " + issue;
  }
  emit(o, j, text);
  return rep.ok && members ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgroup graphs for amalgams of finite groups"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", o.file, "amalgam input file")->required();
    cmd->add_option("--gen", o.gens, "subgroup generator word")
        ->allow_extra_args(false);
    cmd->add_option("--format", o.format, "text or json-lines");
    cmd->add_option("--coset-cap", o.coset_cap, "enumeration coset cap");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--name", o.name, "output base name");
  };

  auto* build = app.add_subcommand("build", "construct the subgroup graph");
  add_common(build);
  build->add_flag("--dot", o.dot, "also write DOT output");
  build->add_flag("--trace", o.trace, "write per-step DOT frames");

  auto* member = app.add_subcommand("member", "membership of a word");
  add_common(member);
  member->add_option("word", o.word, "query word")->required();

  auto* fr = app.add_subcommand("free", "freeness of the subgroup");
  add_common(fr);

  auto* tf = app.add_subcommand("torsion-free", "torsion-freeness");
  add_common(tf);

  auto* ix = app.add_subcommand("index", "index of the subgroup");
  add_common(ix);
  ix->add_flag("--verbose", o.verbose, "print escaping elements when infinite");

  auto* pr = app.add_subcommand("present", "subgroup presentation");
  add_common(pr);
  pr->add_flag("--raw", o.raw, "skip Tietze simplification");

  auto* sep = app.add_subcommand("separate", "separating subgroup");
  add_common(sep);
  sep->add_option("--exclude", o.exclude, "word to exclude")->required();

  auto* ed = app.add_subcommand("export-dot", "DOT of the subgroup graph");
  add_common(ed);

  auto* info = app.add_subcommand("info", "amalgam and word information");
  add_common(info);
  info->add_option("--word", o.word, "word to normalize");

  auto* ver = app.add_subcommand("verify", "verify precover invariants");
  add_common(ver);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return run_build(o);
    if (member->parsed()) return run_member(o);
    if (fr->parsed()) return run_free(o, false);
    if (tf->parsed()) return run_free(o, true);
    if (ix->parsed()) return run_index(o);
    if (pr->parsed()) return run_present(o);
    if (sep->parsed()) return run_separate(o);
    if (ed->parsed()) return run_export_dot(o);
    if (info->parsed()) return run_info(o);
    if (ver->parsed()) return run_verify(o);
  } catch (amalgam::separate_error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == amalgam::separate_error::unsupported ? 3 : 2;
  } catch (amalgam::parse_error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (amalgam::validation_error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (amalgam::enumeration_error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
