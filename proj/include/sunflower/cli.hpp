#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sunflower/sunflower.hpp"

namespace sunflower::cli {

using nlohmann::json;

constexpr int kJsonSchemaVersion = 1;

inline const char* kGrammarHelp =
    "file formats:\n"
    "  .sets   one set per line: {a,b,c} with ascending naturals; '#' comments\n"
    "  .fam    spec := explicit{set,...} | initial_segments | matching(INT)\n"
    "               | star(set) | graded_blocks | union(spec,spec) | pad(INT,spec)\n"
    "               | link(INT,spec) | strip(INT,spec) | slice(INT,spec)\n"
    "               | gadget(row;row;...)\n"
    "          row  := identity | mod INT | const_after INT INT\n"
    "               | explicit[(INT,INT)...] | undefined\n"
    "  '-' reads stdin; give --format sets|fam\n";

namespace detail {

inline int exit_code_for(errc c) {
  switch (c) {
    case errc::syntax_error:
    case errc::arity_error:
    case errc::non_positive_parameter:
      return 2;
    case errc::budget_exhausted:
    case errc::too_large:
    case errc::pool_too_large:
      return 3;
    default:
      return 1;
  }
}

inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("SUNFLOWER_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return Budget::kDefault;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

// Dispatch by extension: .sets is an explicit family, .fam a spec
// expression; stdin requires --format.
inline std::string input_kind(const std::string& path, const std::string& format) {
  if (path == "-") {
    if (format != "sets" && format != "fam") {
      throw error(errc::syntax_error, "reading stdin requires --format sets|fam");
    }
    return format;
  }
  if (!format.empty()) return format;
  if (ends_with(path, ".sets")) return "sets";
  if (ends_with(path, ".fam")) return "fam";
  throw error(errc::syntax_error, "unknown input extension (want .sets or .fam): " + path);
}

inline FamilySpec load_spec(const std::string& path, const std::string& format,
                            std::istream& in) {
  std::string kind = input_kind(path, format);
  std::string text = read_input(path, in);
  if (kind == "sets") {
    std::istringstream stream(text);
    return FamilySpec::explicit_family(read_sets(stream));
  }
  return parse_spec(text);
}

inline FiniteFamily load_family(const std::string& path, const std::string& format,
                                std::istream& in, std::uint64_t budget) {
  std::string kind = input_kind(path, format);
  std::string text = read_input(path, in);
  if (kind == "sets") {
    std::istringstream stream(text);
    return read_sets(stream);
  }
  FamilySpec spec = parse_spec(text);
  Cardinality count = member_count(spec);
  if (!count.is_finite()) {
    throw error(errc::invalid_node, "spec does not denote a finite family; this subcommand "
                                    "needs explicit members");
  }
  Budget b(budget);
  Enumeration e = enumerate_family(spec, count.count(), b);
  if (e.members.size() != count.count()) {
    throw error(errc::budget_exhausted, "materializing the family ran out of budget");
  }
  return e.members;
}

inline json set_json(const FiniteSet& s) {
  json a = json::array();
  for (Element e : s) a.push_back(e);
  return a;
}

inline json family_json(const FiniteFamily& f) {
  json a = json::array();
  for (const auto& s : f) a.push_back(set_json(s));
  return a;
}

inline json cardinality_json(const Cardinality& c) {
  json o;
  o["infinite"] = c.is_infinite();
  if (c.is_finite()) o["count"] = c.count();
  if (c.is_unknown()) o["unknown"] = true;
  return o;
}

inline std::string family_inline(const FiniteFamily& f) {
  std::string out;
  bool first = true;
  for (const auto& s : f) {
    if (!first) out += ",";
    out += set_to_string(s);
    first = false;
  }
  return out;
}

inline void emit_json(std::ostream& out, json j) {
  out << j.dump(2) << "\n";
}

// ---- subcommand handlers -------------------------------------------------

inline int cmd_check(const FiniteFamily& fam, bool as_json, std::ostream& out) {
  SunflowerCheck check = is_sunflower(fam);
  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "check"}};
    j["members"] = fam.size();
    j["sunflower"] = check.verdict;
    if (check.core) j["core"] = set_json(*check.core);
    if (check.violation) {
      j["violation"] = {{"first", {check.violation->first_i, check.violation->first_j}},
                        {"second", {check.violation->second_i, check.violation->second_j}}};
    }
    emit_json(out, j);
    return 0;
  }
  if (check.verdict) {
    if (check.core) {
      out << "sunflower core=" << set_to_string(*check.core) << "\n";
    } else {
      out << "sunflower core=undetermined\n";
    }
  } else {
    const auto& v = *check.violation;
    out << "not a sunflower: members (" << v.first_i << "," << v.first_j << ") intersect in "
        << set_to_string(intersect(fam[v.first_i], fam[v.first_j])) << " but members ("
        << v.second_i << "," << v.second_j << ") intersect in "
        << set_to_string(intersect(fam[v.second_i], fam[v.second_j])) << "\n";
  }
  return 0;
}

inline int cmd_core(const FiniteFamily& fam, bool as_json, std::ostream& out) {
  SunflowerCheck check = is_sunflower(fam);
  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "core"}};
    j["sunflower"] = check.verdict;
    j["defined"] = check.verdict && check.core.has_value();
    if (check.verdict && check.core) j["core"] = set_json(*check.core);
    emit_json(out, j);
    return 0;
  }
  if (!check.verdict) {
    out << "not a sunflower\n";
  } else if (check.core) {
    out << "core=" << set_to_string(*check.core) << "\n";
  } else {
    out << "core=undetermined\n";
  }
  return 0;
}

inline int cmd_maxsunflower(const FiniteFamily& fam, const std::string& method,
                            std::uint64_t petals, std::uint64_t guard, bool as_json,
                            std::ostream& out) {
  if (method == "exact") {
    SearchResult result = max_sunflower_exact(fam, guard);
    if (as_json) {
      json j{{"version", kJsonSchemaVersion}, {"command", "maxsunflower"}};
      j["method"] = "exact";
      j["size"] = result.size;
      j["witness"] = family_json(result.witness);
      j["exhaustive"] = result.exhaustive;
      emit_json(out, j);
      return 0;
    }
    out << "max sunflower: size " << result.size << "\n";
    for (const auto& s : result.witness) out << set_to_string(s) << "\n";
    return 0;
  }
  auto result = erdos_rado_find(fam, petals);
  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "maxsunflower"}};
    j["method"] = "erdos-rado";
    j["petals"] = petals;
    j["found"] = result.has_value();
    if (result) {
      j["size"] = result->size;
      j["witness"] = family_json(result->witness);
    }
    emit_json(out, j);
    return 0;
  }
  if (!result) {
    out << "erdos-rado: not found\n";
  } else {
    out << "erdos-rado: found size " << result->size << "\n";
    for (const auto& s : result->witness) out << set_to_string(s) << "\n";
  }
  return 0;
}

inline int cmd_pad(const std::string& path, const std::string& format, std::istream& in,
                   std::uint64_t bound, std::uint64_t count, const std::string& map_path,
                   std::uint64_t budget, bool as_json, std::ostream& out) {
  std::string kind = input_kind(path, format);
  std::vector<std::pair<FiniteSet, FiniteSet>> map;
  bool exhausted = false;
  if (kind == "sets") {
    std::string text = read_input(path, in);
    std::istringstream stream(text);
    PaddedFamily padded = pad_family(read_sets(stream), bound);
    map = padded.map;
  } else {
    std::string text = read_input(path, in);
    FamilySpec spec = parse_spec(text);
    PaddedFamily padded = pad_family(spec, bound);  // validates the bound
    if (count == 0) {
      throw error(errc::syntax_error, "padding a spec needs --count for the prefix length");
    }
    Budget b(budget);
    map = materialize_pad_map(spec, bound, count, b);
    exhausted = map.size() < count;
  }

  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "pad"}};
    j["bound"] = bound;
    json entries = json::array();
    for (const auto& [src, img] : map) {
      entries.push_back({{"source", set_json(src)}, {"image", set_json(img)}});
    }
    j["map"] = entries;
    j["exhausted"] = exhausted;
    emit_json(out, j);
  } else {
    for (const auto& [src, img] : map) out << set_to_string(img) << "\n";
    if (exhausted) out << "# budget exhausted after " << map.size() << " members\n";
  }
  if (!map_path.empty()) {
    std::ofstream sidecar(map_path);
    if (!sidecar) throw std::runtime_error("cannot open " + map_path);
    for (const auto& [src, img] : map) {
      sidecar << set_to_string(src) << " -> " << set_to_string(img) << "\n";
    }
  }
  return 0;
}

inline int cmd_extract(const FamilySpec& spec, std::uint64_t count, std::uint64_t budget,
                       std::uint64_t truncate, bool as_json, std::ostream& out) {
  if (truncate > 0) {
    // Best effort: the same algorithm over the explicit first-N truncation.
    Budget b(budget);
    Enumeration pool = enumerate_family(spec, truncate, b);
    const auto& ms = pool.members.members();
    if (ms.empty()) throw error(errc::not_uniform, "truncation is empty");
    std::size_t size = ms[0].size();
    for (const auto& m : ms) {
      if (m.size() != size) {
        throw error(errc::not_uniform, "truncated members have mixed sizes");
      }
    }
    std::vector<FiniteSet> emitted;
    FiniteSet used;
    for (const auto& m : ms) {
      if (emitted.size() >= count) break;
      if (!disjoint(m, used)) continue;
      emitted.push_back(m);
      used = set_union(used, m);
    }
    if (as_json) {
      json j{{"version", kJsonSchemaVersion}, {"command", "extract"}};
      j["truncated"] = truncate;
      j["core"] = set_json(FiniteSet{});
      j["members"] = family_json(FiniteFamily::from_distinct(emitted));
      j["exhausted"] = emitted.size() < count;
      emit_json(out, j);
      return 0;
    }
    out << "# best-effort: truncated to first " << truncate << " members\n";
    out << "core={}\n";
    for (const auto& m : emitted) out << set_to_string(m) << "\n";
    if (emitted.size() < count) {
      out << "# exhausted after " << emitted.size() << " members\n";
    }
    return 0;
  }

  SunflowerStream stream = extract_uniform_sunflower(spec, Budget(budget));
  std::vector<FiniteSet> emitted;
  for (std::uint64_t i = 0; i < count; ++i) {
    Budget b(budget);
    emitted.push_back(stream.next(b));
  }
  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "extract"}};
    j["core"] = set_json(stream.core());
    j["members"] = family_json(FiniteFamily::from_distinct(emitted));
    emit_json(out, j);
    return 0;
  }
  out << "core=" << set_to_string(stream.core()) << "\n";
  for (const auto& m : emitted) out << set_to_string(m) << "\n";
  return 0;
}

inline int cmd_tree(const FamilySpec& spec, std::uint64_t n, std::uint64_t depth,
                    std::int64_t level, std::uint64_t guard, std::uint64_t budget, bool as_json,
                    std::ostream& out) {
  if (level >= 0) {
    Budget b(budget);
    TreeLevel lv = tree_level(spec, n, static_cast<std::uint64_t>(level), b, guard);
    if (as_json) {
      json j{{"version", kJsonSchemaVersion}, {"command", "tree"}};
      j["n"] = n;
      j["level"] = level;
      json nodes = json::array();
      for (const auto& node : lv.nodes) nodes.push_back(family_json(node));
      j["nodes"] = nodes;
      j["count"] = lv.nodes.size();
      emit_json(out, j);
      return 0;
    }
    out << "n=" << n << " level=" << level << " nodes=" << lv.nodes.size() << "\n";
    for (const auto& node : lv.nodes) out << family_inline(node) << "\n";
    return 0;
  }

  Budget b(budget);
  TreeStats stats = tree_stats(spec, n, depth, b, guard);
  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "tree"}};
    j["n"] = stats.n;
    j["depth"] = stats.depth;
    j["per_level_counts"] = stats.per_level_counts;
    j["cumulative_distinct"] = stats.cumulative_distinct;
    j["longest_strict_chain"] = stats.longest_strict_chain;
    json chain = json::array();
    for (const auto& node : stats.chain_witness) chain.push_back(family_json(node));
    j["chain_witness"] = chain;
    emit_json(out, j);
    return 0;
  }
  out << "n=" << stats.n << " depth=" << stats.depth << "\n";
  out << "per-level node counts:";
  for (auto c : stats.per_level_counts) out << " " << c;
  out << "\n";
  out << "cumulative distinct nodes:";
  for (auto c : stats.cumulative_distinct) out << " " << c;
  out << "\n";
  out << "longest strict chain: " << stats.longest_strict_chain << "\n";
  out << "chain witness:";
  bool first = true;
  for (const auto& node : stats.chain_witness) {
    out << (first ? " " : " | ") << family_inline(node);
    first = false;
  }
  out << "\n";
  return 0;
}

inline int cmd_classify(const FamilySpec& spec, std::uint64_t emit, std::uint64_t budget,
                        bool as_json, std::ostream& out) {
  Classification result = classify(spec, Budget(budget));
  std::vector<FiniteSet> members;
  if (result.outcome == Classification::Outcome::witness) {
    for (std::uint64_t i = 0; i < emit; ++i) {
      Budget b(budget);
      members.push_back(result.stream->next(b));
    }
  }

  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "classify"}};
    j["code"] = result.code();
    switch (result.outcome) {
      case Classification::Outcome::not_infinite_family:
        j["outcome"] = "not an infinite family";
        break;
      case Classification::Outcome::no_infinite_sunflower:
        j["outcome"] = "infinite family, no infinite sunflower";
        break;
      case Classification::Outcome::witness:
        j["outcome"] = "infinite sunflower witness";
        j["core"] = set_json(*result.core);
        j["members"] = family_json(FiniteFamily::from_distinct(members));
        break;
      case Classification::Outcome::unknown: {
        j["outcome"] = "unknown";
        json records = json::array();
        for (const auto& record : result.report->per_core) {
          records.push_back(
              {{"core", set_json(record.core)}, {"largest_found", record.largest_found}});
        }
        j["report"] = records;
        break;
      }
    }
    emit_json(out, j);
    return 0;
  }

  switch (result.outcome) {
    case Classification::Outcome::not_infinite_family:
      out << "0 (not an infinite family)\n";
      break;
    case Classification::Outcome::no_infinite_sunflower:
      out << "1 (infinite family, no infinite sunflower)\n";
      break;
    case Classification::Outcome::witness:
      out << "2 (infinite sunflower witness, core=" << set_to_string(*result.core) << ")\n";
      for (const auto& m : members) out << set_to_string(m) << "\n";
      break;
    case Classification::Outcome::unknown:
      out << "unknown (not certified within budget)\n";
      for (const auto& record : result.report->per_core) {
        out << "core " << set_to_string(record.core) << ": largest exact-core sunflower found "
            << record.largest_found << "\n";
      }
      break;
  }
  return 0;
}

inline int cmd_gadget(const FamilySpec& spec, std::uint64_t truncation, std::uint64_t guard,
                      bool as_json, std::ostream& out) {
  if (spec.kind() != FamilySpec::Kind::gadget) {
    throw error(errc::invalid_node, "the gadget subcommand needs a gadget(...) spec");
  }
  GadgetReport report = verify_claim(spec.table(), truncation, guard);

  if (as_json) {
    json j{{"version", kJsonSchemaVersion}, {"command", "gadget"}};
    j["truncation"] = report.truncation;
    json ranges = json::array();
    for (const auto& r : report.per_row_range) ranges.push_back(cardinality_json(r));
    j["row_ranges"] = ranges;
    j["truncated_members"] = report.truncated_member_count;
    j["max_sunflower_truncated"] = report.max_sunflower_truncated;
    j["classification_expected"] = report.classification_expected;
    j["classification_actual"] = report.classification_actual;
    if (report.witness_core) j["witness_core"] = set_json(*report.witness_core);
    if (report.classification_expected == 1) {
      j["bound"] = report.bound_limit;
      j["within_bound"] = report.within_bound;
    }
    emit_json(out, j);
    return 0;
  }

  out << "truncation=" << report.truncation << "\n";
  out << "row ranges:";
  for (const auto& r : report.per_row_range) {
    if (r.is_infinite()) {
      out << " infinite";
    } else {
      out << " finite(" << r.count() << ")";
    }
  }
  out << "\n";
  out << "truncated members: " << report.truncated_member_count << "\n";
  out << "truncated max sunflower: " << report.max_sunflower_truncated << "\n";
  out << "expected classification: " << report.classification_expected << "\n";
  out << "actual classification: " << report.classification_actual << "\n";
  if (report.witness_core) {
    out << "witness core: " << set_to_string(*report.witness_core) << "\n";
  }
  if (report.classification_expected == 1) {
    out << "bound: " << report.bound_limit << "\n";
    out << "within bound: " << (report.within_bound ? "yes" : "no") << "\n";
  }
  return 0;
}

}  // namespace detail

// Entry point shared by the binary and the tests. `args` excludes the
// program name. Exit codes: 0 success (negative findings are data), 1 domain
// errors, 2 usage or parse errors, 3 budget and guard errors.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"analyze sunflowers (delta-systems) in families of finite sets", "sunflower"};
  app.require_subcommand(1);
  app.footer(kGrammarHelp);

  std::string file;
  std::string format;
  bool as_json = false;
  std::uint64_t budget = detail::default_budget();

  auto add_common = [&](CLI::App* cmd, bool spec_input) {
    cmd->add_option("file", file, spec_input ? "input spec (.fam|.sets|-)" : "input family (.sets|-)")
        ->required();
    cmd->add_option("--format", format, "input format when reading stdin (sets|fam)");
    cmd->add_flag("--json", as_json, "machine-readable output");
    cmd->add_option("--budget", budget, "enumeration budget (candidate sets examined)");
  };

  CLI::App* check = app.add_subcommand("check", "verify whether a finite family is a sunflower");
  add_common(check, false);

  CLI::App* core = app.add_subcommand("core", "common intersection of a finite sunflower");
  add_common(core, false);

  CLI::App* maxs = app.add_subcommand("maxsunflower", "largest sunflower inside a finite family");
  add_common(maxs, false);
  std::string method = "exact";
  std::uint64_t petals = 3;
  std::uint64_t search_guard = 20;
  maxs->add_option("--method", method, "exact|erdos-rado")
      ->check(CLI::IsMember({"exact", "erdos-rado"}));
  maxs->add_option("--petals", petals, "petal target for erdos-rado");
  maxs->add_option("--guard", search_guard, "exact-search size guard");

  CLI::App* pad = app.add_subcommand("pad", "pad a bounded family to constant size");
  add_common(pad, true);
  std::uint64_t bound = 0;
  std::uint64_t pad_count = 0;
  std::string map_path;
  pad->add_option("--bound", bound, "target member size")->required();
  pad->add_option("--count", pad_count, "prefix length when padding a spec");
  pad->add_option("--map", map_path, "write a source -> image sidecar file");

  CLI::App* extract = app.add_subcommand("extract", "infinite sunflower from a uniform family");
  add_common(extract, true);
  std::uint64_t extract_count = 10;
  std::uint64_t truncate = 0;
  extract->add_option("--count", extract_count, "members to emit");
  extract->add_option("--truncate", truncate, "best-effort mode on the first N members");

  CLI::App* tree = app.add_subcommand("tree", "sunflower tree levels and growth");
  add_common(tree, true);
  std::uint64_t tree_n = 1;
  std::uint64_t depth = 4;
  std::int64_t level = -1;
  std::uint64_t tree_guard = 24;
  tree->add_option("--n", tree_n, "tree index n")->required();
  tree->add_option("--depth", depth, "maximum level for statistics");
  tree->add_option("--level", level, "list the nodes of one level")
      ->check(CLI::NonNegativeNumber);
  tree->add_option("--guard", tree_guard, "pool size guard");

  CLI::App* classify_cmd = app.add_subcommand("classify", "0/1/witness classification");
  add_common(classify_cmd, true);
  std::uint64_t emit = 0;
  classify_cmd->add_option("--emit", emit, "witness members to print");

  CLI::App* gadget_cmd = app.add_subcommand("gadget", "verify the table reduction at a truncation");
  add_common(gadget_cmd, true);
  std::uint64_t truncation = 50;
  std::uint64_t gadget_guard = 256;
  gadget_cmd->add_option("--truncate", truncation, "largest stage to materialize");
  gadget_cmd->add_option("--guard", gadget_guard, "truncated pool guard");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (check->parsed()) {
      return detail::cmd_check(detail::load_family(file, format, in, budget), as_json, out);
    }
    if (core->parsed()) {
      return detail::cmd_core(detail::load_family(file, format, in, budget), as_json, out);
    }
    if (maxs->parsed()) {
      return detail::cmd_maxsunflower(detail::load_family(file, format, in, budget), method,
                                      petals, search_guard, as_json, out);
    }
    if (pad->parsed()) {
      return detail::cmd_pad(file, format, in, bound, pad_count, map_path, budget, as_json, out);
    }
    if (extract->parsed()) {
      return detail::cmd_extract(detail::load_spec(file, format, in), extract_count, budget,
                                 truncate, as_json, out);
    }
    if (tree->parsed()) {
      return detail::cmd_tree(detail::load_spec(file, format, in), tree_n, depth, level,
                              tree_guard, budget, as_json, out);
    }
    if (classify_cmd->parsed()) {
      return detail::cmd_classify(detail::load_spec(file, format, in), emit, budget, as_json,
                                  out);
    }
    if (gadget_cmd->parsed()) {
      return detail::cmd_gadget(detail::load_spec(file, format, in), truncation, gadget_guard,
                                as_json, out);
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return detail::exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace sunflower::cli
