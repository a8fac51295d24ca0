#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orchard/orchardkit.hpp"

namespace orchard::cli {

inline constexpr int schema_version = 1;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

using nlohmann::json;

// A failure outside the library's error model (unreadable file, bad flag
// combination); reported like a usage error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  explicit Context(Streams s) : io(s) {}

  Streams io;
  std::string format = "arclist";
  bool as_json = false;
  std::string output;
  std::string current_file;  // attached to domain errors

  std::string read(const std::string& path) {
    current_file = path.empty() || path == "-" ? "<stdin>" : path;
    if (path.empty() || path == "-")
      return {std::istreambuf_iterator<char>(io.in), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  PhyloNetwork read_network(const std::string& path) {
    auto text = read(path);
    return format == "enewick" ? parse_enewick(text) : parse_arclist(text);
  }

  AncestralProfile read_profile(const std::string& path) { return parse_profile(read(path)); }

  std::string write_network(const PhyloNetwork& net) const {
    return format == "enewick" ? serialize_enewick(net) : serialize_arclist(net);
  }

  void emit(const std::string& text) {
    if (output.empty() || output == "-") {
      io.out << text;
      return;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + output);
    f << text;
  }

  void emit(const std::string& command, json body, const std::string& text) {
    if (!as_json) return emit(text);
    json report = {{"schema_version", schema_version}, {"command", command}};
    report.update(body);
    emit(report.dump(2) + "\n");
  }
};

inline json profile_json(const AncestralProfile& p) {
  json rows = json::object();
  for (std::size_t i = 0; i < p.leaf_count(); ++i) {
    json row = json::array();
    for (const auto& e : p.rows[i]) row.push_back(e ? json(e->str()) : json(nullptr));
    rows[p.leaf_order[i]] = row;
  }
  return {{"leaf_order", p.leaf_order}, {"coord_names", p.coord_names}, {"rows", rows}};
}

inline json finding_json(const CherryFinding& f) {
  return {{"kind", std::string(cherry_kind_name(f.kind))}, {"a", f.a}, {"b", f.b}};
}

inline std::string finding_line(const CherryFinding& f) {
  return std::string(cherry_kind_name(f.kind)) + " " + f.a + " " + f.b + "\n";
}

inline std::string sequence_text(const ReductionSequence& s) {
  std::string out;
  for (const auto& st : s.steps) out += finding_line(st.finding);
  return out;
}

inline json sequence_json(const ReductionSequence& s) {
  json steps = json::array();
  for (const auto& st : s.steps) steps.push_back(finding_json(st.finding));
  return {{"steps", steps}, {"complete", s.complete}};
}

inline std::uint64_t default_seed() {
  if (const char* s = std::getenv("ORCHARDKIT_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("ORCHARDKIT_SEED is not an unsigned integer: ") + s);
    }
  }
  return 0;
}

inline json error_json(const Error& e, const std::string& file) {
  json j = {{"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
  if (!e.subject().empty()) j["subject"] = e.subject();
  if (!file.empty()) j["file"] = file;
  if (e.has_location()) {
    j["line"] = e.line();
    j["column"] = e.column();
  }
  return j;
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 domain error (JSON on `err`), 2 usage error.
inline int run(std::vector<std::string> args, Streams io) {
  using detail::json;
  detail::Context ctx{io};

  CLI::App app{"Orchard phylogenetic network toolkit", "orchardkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto add_common = [&](CLI::App* sub, bool network_format = true) {
    if (network_format)
      sub->add_option("--format", ctx.format, "Network file format")
          ->check(CLI::IsMember({"arclist", "enewick"}))
          ->capture_default_str();
    sub->add_flag("--json", ctx.as_json, "Write a machine-readable report");
    sub->add_option("-o,--output", ctx.output, "Output path (default: stdout)");
  };

  std::string input, input2;
  auto* validate_cmd = app.add_subcommand("validate", "Check a network file");
  validate_cmd->add_option("input", input, "Network file (default: stdin)");
  add_common(validate_cmd);

  auto* profile_cmd = app.add_subcommand("profile", "Ancestral profile of a network");
  profile_cmd->add_option("input", input, "Network file (default: stdin)");
  add_common(profile_cmd);

  auto* sets_cmd = app.add_subcommand("sets", "Ancestral sets of a network");
  sets_cmd->add_option("input", input, "Network file (default: stdin)");
  add_common(sets_cmd);

  auto* tuples_cmd = app.add_subcommand("path-tuples", "Path-tuple multiset of a network");
  tuples_cmd->add_option("input", input, "Network file (default: stdin)");
  add_common(tuples_cmd);

  bool from_profile = false;
  auto* cherries_cmd = app.add_subcommand("cherries", "List cherries and reticulated cherries");
  cherries_cmd->add_option("input", input, "Network or profile file (default: stdin)");
  cherries_cmd->add_flag("--profile", from_profile, "Input is a profile; detect from ancestral sets");
  add_common(cherries_cmd);

  std::pair<std::string, std::string> reduce_pair, cut_pair;
  std::string coord_j, coord_k;
  bool random_order = false;
  std::optional<std::uint64_t> seed;
  auto* reduce_cmd = app.add_subcommand("reduce", "Apply cherry reductions");
  reduce_cmd->add_option("input", input, "Network or profile file (default: stdin)");
  auto* o_reduce = reduce_cmd->add_option("--reduce", reduce_pair, "Reduce leaf B of the cherry {A, B}")
                       ->type_name("A B");
  auto* o_cut = reduce_cmd->add_option("--cut", cut_pair, "Cut the reticulated cherry (A, B), B the reticulation leaf")
                    ->type_name("A B");
  auto* o_random = reduce_cmd->add_flag("--random", random_order, "Apply random reductions until none applies");
  reduce_cmd->add_option("--seed", seed, "Seed for --random (default: $ORCHARDKIT_SEED or 0)");
  reduce_cmd->add_flag("--profile", from_profile, "Input is a profile; apply the profile-level operation");
  reduce_cmd->add_option("--j", coord_j, "Coordinate seeing exactly A and B (default: smallest candidate)");
  reduce_cmd->add_option("--k", coord_k, "Coordinate seeing only B, for --cut (default: smallest candidate)");
  o_reduce->excludes(o_cut)->excludes(o_random);
  o_cut->excludes(o_random);
  add_common(reduce_cmd);

  auto* orchard_cmd = app.add_subcommand("is-orchard", "Decide whether a network is orchard");
  orchard_cmd->add_option("input", input, "Network file (default: stdin)");
  add_common(orchard_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Orchard, tree-child, tree-sibling, time-consistent");
  classify_cmd->add_option("input", input, "Network file (default: stdin)");
  add_common(classify_cmd);

  std::size_t budget = 1'000'000;
  auto* count_cmd = app.add_subcommand("count-seqs", "Count complete cherry-reduction sequences");
  count_cmd->add_option("input", input, "Network file (default: stdin)");
  count_cmd->add_option("--budget", budget, "Maximum number of explored states")->capture_default_str();
  add_common(count_cmd);

  std::string trace_path;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Rebuild an orchard network from its profile");
  reconstruct_cmd->add_option("input", input, "Profile file (default: stdin)");
  reconstruct_cmd->add_option("--trace", trace_path, "Write the reconstruction trace here (default: stderr)");
  add_common(reconstruct_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Does a network realise a profile?");
  verify_cmd->add_option("profile", input, "Profile file")->required();
  verify_cmd->add_option("network", input2, "Network file")->required();
  add_common(verify_cmd);

  auto* distance_cmd = app.add_subcommand("distance", "Path-tuple multiset distance");
  distance_cmd->add_option("first", input, "Network file")->required();
  distance_cmd->add_option("second", input2, "Network file")->required();
  add_common(distance_cmd);

  auto* iso_cmd = app.add_subcommand("isomorphic", "Leaf-preserving isomorphism test");
  iso_cmd->add_option("first", input, "Network file")->required();
  iso_cmd->add_option("second", input2, "Network file")->required();
  add_common(iso_cmd);

  std::size_t gen_n = 0, gen_k = 0;
  bool tree_child_only = false, emit_script = false;
  std::optional<std::size_t> chain;
  std::string script_path;
  auto* generate_cmd = app.add_subcommand("generate", "Generate an orchard network");
  generate_cmd->add_option("--n", gen_n, "Number of leaves");
  generate_cmd->add_option("--k", gen_k, "Number of reticulations");
  generate_cmd->add_option("--seed", seed, "Seed (default: $ORCHARDKIT_SEED or 0)");
  auto* o_tc = generate_cmd->add_flag("--tree-child", tree_child_only, "Sample a tree-child network");
  auto* o_chain = generate_cmd->add_option("--chain", chain, "Stacked-reticulation chain with M reticulations");
  auto* o_script = generate_cmd->add_option("--script", script_path, "Build from a script file");
  generate_cmd->add_flag("--emit-script", emit_script, "Print the build script instead of the network");
  o_chain->excludes(o_tc)->excludes(o_script);
  o_script->excludes(o_tc);
  add_common(generate_cmd);

  std::size_t max_internal = 6, max_leaves = 3, workers = 1;
  std::size_t search_budget = 10'000'000;
  auto* collision_cmd = app.add_subcommand("find-collision", "Search for non-orchard networks with equal profiles");
  collision_cmd->add_option("--max-internal", max_internal, "Largest number of internal vertices")
      ->capture_default_str();
  collision_cmd->add_option("--max-leaves", max_leaves, "Largest number of leaves")->capture_default_str();
  collision_cmd->add_option("--budget", search_budget, "Maximum number of networks examined")->capture_default_str();
  collision_cmd->add_option("--workers", workers, "Parallel workers")->capture_default_str();
  add_common(collision_cmd);
  collision_cmd->get_option("--output")->description("Write PREFIX-1 and PREFIX-2 instead of stdout");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    io.out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    io.err << "usage error: " << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) io.err << sub->help();
    return 2;
  }

  try {
    auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();

    if (cmd == validate_cmd) {
      auto net = ctx.read_network(input);
      std::ostringstream text;
      text << "valid: leaves=" << net.leaf_count() << " reticulations=" << net.reticulation_count()
           << " vertices=" << net.vertex_count() << " arcs=" << net.arc_count() << "\n";
      ctx.emit(name,
               {{"valid", true},
                {"leaves", net.leaf_count()},
                {"reticulations", net.reticulation_count()},
                {"vertices", net.vertex_count()},
                {"arcs", net.arc_count()}},
               text.str());
    } else if (cmd == profile_cmd) {
      auto p = ancestral_profile(ctx.read_network(input));
      ctx.emit(name, {{"profile", detail::profile_json(p)}}, serialize_profile(p));
    } else if (cmd == sets_cmd) {
      auto s = ancestral_sets(ancestral_profile(ctx.read_network(input)));
      std::string text;
      json sets = json::object();
      for (std::size_t i = 0; i < s.leaf_order.size(); ++i) {
        auto names = s.names_of(i);
        text += s.leaf_order[i] + ":";
        for (const auto& v : names) text += " " + v;
        text += "\n";
        sets[s.leaf_order[i]] = names;
      }
      ctx.emit(name, {{"sets", sets}}, text);
    } else if (cmd == tuples_cmd) {
      auto m = path_tuples(ctx.read_network(input));
      std::string text;
      for (std::size_t i = 0; i < m.leaf_order.size(); ++i) text += (i ? "," : "") + m.leaf_order[i];
      text += "\n";
      json tuples = json::array();
      for (const auto& t : m.tuples) {
        json row = json::array();
        for (std::size_t i = 0; i < t.size(); ++i) {
          text += (i ? "," : "") + t[i].str();
          row.push_back(t[i].str());
        }
        text += "\n";
        tuples.push_back(row);
      }
      ctx.emit(name, {{"leaf_order", m.leaf_order}, {"tuples", tuples}}, text);
    } else if (cmd == cherries_cmd) {
      auto found = from_profile ? find_cherries_profile(ctx.read_profile(input))
                                : find_cherries_graph(ctx.read_network(input));
      std::string text;
      json list = json::array();
      for (const auto& f : found) {
        text += detail::finding_line(f);
        list.push_back(detail::finding_json(f));
      }
      ctx.emit(name, {{"cherries", list}}, text);
    } else if (cmd == reduce_cmd) {
      if (!o_reduce->count() && !o_cut->count() && !random_order)
        throw detail::UsageError("reduce needs one of --reduce A B, --cut A B, --random");
      if (from_profile) {
        if (random_order) throw detail::UsageError("--random works on networks, not profiles");
        auto p = ctx.read_profile(input);
        auto coord = [&](const std::string& c) -> std::optional<std::size_t> {
          if (c.empty()) return std::nullopt;
          if (auto j = p.find_coord(c)) return j;
          throw Error(Errc::UnknownVertex, "profile has no coordinate '" + c + "'", c);
        };
        ProfileReduction r = o_reduce->count()
                                 ? reduce_cherry_profile(p, reduce_pair.first, reduce_pair.second, coord(coord_j))
                                 : cut_reticulated_cherry_profile(p, cut_pair.first, cut_pair.second, coord(coord_j),
                                                                  coord(coord_k));
        json consumed = json::array();
        for (auto j : r.step.consumed) consumed.push_back(p.coord_names[j]);
        ctx.emit(name,
                 {{"step", detail::finding_json(r.step.finding)},
                  {"consumed", consumed},
                  {"profile", detail::profile_json(r.profile)}},
                 serialize_profile(r.profile));
      } else if (random_order) {
        auto net = ctx.read_network(input);
        auto s = random_maximal_sequence(net, seed.value_or(detail::default_seed()));
        auto text = detail::sequence_text(s) + (s.complete ? "complete\n" : "stuck\n");
        auto body = detail::sequence_json(s);
        body["terminal"] = ctx.write_network(s.terminal);
        ctx.emit(name, body, text);
      } else {
        if (!coord_j.empty() || !coord_k.empty()) throw detail::UsageError("--j and --k need --profile");
        auto net = ctx.read_network(input);
        auto out = o_reduce->count() ? reduce_cherry_net(net, reduce_pair.first, reduce_pair.second)
                                       : cut_reticulated_cherry_net(net, cut_pair.first, cut_pair.second);
        ctx.emit(name, {{"network", ctx.write_network(out)}}, ctx.write_network(out));
      }
    } else if (cmd == orchard_cmd) {
      auto r = is_orchard(ctx.read_network(input));
      std::string text = r.orchard ? "true\n" + detail::sequence_text(r.sequence)
                                   : "false\n" + ctx.write_network(r.sequence.terminal);
      auto body = detail::sequence_json(r.sequence);
      body["orchard"] = r.orchard;
      body["terminal"] = ctx.write_network(r.sequence.terminal);
      ctx.emit(name, body, text);
    } else if (cmd == classify_cmd) {
      auto c = classify(ctx.read_network(input));
      auto flag = [](bool b) { return b ? "true" : "false"; };
      std::string text;
      text += std::string("orchard: ") + flag(c.is_orchard) + "\n";
      text += std::string("tree-child: ") + flag(c.is_tree_child);
      if (c.tree_child_violation) text += " (" + *c.tree_child_violation + ")";
      text += std::string("\ntree-sibling: ") + flag(c.is_tree_sibling);
      if (c.tree_sibling_violation) text += " (" + *c.tree_sibling_violation + ")";
      text += std::string("\ntime-consistent: ") + flag(c.is_time_consistent);
      if (c.time_violation) text += " (" + c.time_violation->first + " -> " + c.time_violation->second + ")";
      text += "\n";
      json body = {{"orchard", c.is_orchard},
                   {"tree_child", c.is_tree_child},
                   {"tree_sibling", c.is_tree_sibling},
                   {"time_consistent", c.is_time_consistent},
                   {"orchard_sequence", detail::sequence_json(c.orchard_sequence)}};
      if (c.tree_child_violation) body["tree_child_violation"] = *c.tree_child_violation;
      if (c.tree_sibling_violation) body["tree_sibling_violation"] = *c.tree_sibling_violation;
      if (c.is_time_consistent) {
        body["temporal_labelling"] = c.temporal_labelling;
        for (const auto& [v, t] : c.temporal_labelling) text += "t(" + v + ") = " + std::to_string(t) + "\n";
      }
      if (c.time_violation) body["time_violation"] = {c.time_violation->first, c.time_violation->second};
      ctx.emit(name, body, text);
    } else if (cmd == count_cmd) {
      auto n = count_complete_sequences(ctx.read_network(input), budget);
      ctx.emit(name, {{"count", n.str()}}, n.str() + "\n");
    } else if (cmd == reconstruct_cmd) {
      auto r = orchard_tuple(ctx.read_profile(input));
      const auto trace = r.trace.to_text();
      if (!ctx.as_json) {
        if (trace_path.empty()) {
          io.err << trace;
        } else {
          std::ofstream f(trace_path, std::ios::binary);
          if (!f) throw detail::UsageError("cannot write " + trace_path);
          f << trace;
        }
      }
      json steps = json::array();
      for (const auto& s : r.trace.steps)
        steps.push_back({{"rule", std::string(trace_rule_name(s.rule))}, {"a", s.a}, {"b", s.b}, {"consumed", s.consumed}});
      ctx.emit(name, {{"network", ctx.write_network(r.network)}, {"trace", steps}}, ctx.write_network(r.network));
    } else if (cmd == verify_cmd) {
      auto p = ctx.read_profile(input);
      auto net = ctx.read_network(input2);
      bool ok = verify_realisation(p, net);
      ctx.emit(name, {{"realises", ok}}, ok ? "true\n" : "false\n");
    } else if (cmd == distance_cmd) {
      auto a = ctx.read_network(input);
      auto b = ctx.read_network(input2);
      auto d = profile_distance(a, b);
      ctx.emit(name, {{"distance", d}}, std::to_string(d) + "\n");
    } else if (cmd == iso_cmd) {
      auto a = ctx.read_network(input);
      auto b = ctx.read_network(input2);
      auto w = find_isomorphism(a, b);
      std::string text = w ? "true\n" : "false\n";
      json body = {{"isomorphic", w.has_value()}};
      if (w) {
        for (const auto& [u, v] : *w) text += u + " -> " + v + "\n";
        body["witness"] = *w;
      }
      ctx.emit(name, body, text);
    } else if (cmd == generate_cmd) {
      const auto s = seed.value_or(detail::default_seed());
      std::optional<BuildScript> script;
      PhyloNetwork net;
      if (chain) {
        script = chain_script(*chain);
      } else if (!script_path.empty()) {
        script = parse_script(ctx.read(script_path));
      } else if (tree_child_only) {
        if (emit_script) throw detail::UsageError("--emit-script is not available with --tree-child");
        net = random_tree_child(gen_n, gen_k, s);
      } else {
        script = random_orchard_script(gen_n, gen_k, s);
      }
      if (script) net = build(*script);
      if (emit_script) {
        ctx.emit(name, {{"script", serialize_script(*script)}}, serialize_script(*script));
      } else {
        ctx.emit(name, {{"network", ctx.write_network(net)}}, ctx.write_network(net));
      }
    } else if (cmd == collision_cmd) {
      auto pair = find_profile_collision(max_internal, max_leaves, search_budget, workers);
      const auto first = ctx.write_network(pair.first);
      const auto second = ctx.write_network(pair.second);
      std::string text = first + "\n" + second;
      if (!ctx.output.empty() && ctx.output != "-") {
        const std::string ext = ctx.format == "enewick" ? ".nwk" : ".json";
        text.clear();
        for (int i = 1; i <= 2; ++i) {
          const auto path = ctx.output + "-" + std::to_string(i) + ext;
          std::ofstream f(path, std::ios::binary);
          if (!f) throw detail::UsageError("cannot write " + path);
          f << (i == 1 ? first : second);
          text += "wrote " + path + "\n";
        }
        ctx.output.clear();
      }
      ctx.emit(name, {{"first", first}, {"second", second}}, text);
    }
    return 0;
  } catch (const Error& e) {
    io.err << detail::error_json(e, ctx.current_file).dump() << "\n";
    return 1;
  } catch (const detail::UsageError& e) {
    io.err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace orchard::cli
