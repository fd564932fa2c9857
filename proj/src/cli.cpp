#include "fpcheck/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpcheck/abelian.hpp"
#include "fpcheck/coset.hpp"
#include "fpcheck/paperdata.hpp"
#include "fpcheck/permgrp.hpp"
#include "fpcheck/textio.hpp"
#include "fpcheck/tietze.hpp"

namespace fpcheck::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(std::string const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("cannot write " + path);
}

Presentation load_presentation(std::string const& path) {
  try {
    return parse_presentation(read_file(path));
  } catch (ParseError const& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Strategy parse_strategy(std::string const& s) {
  if (s == "felsch") return Strategy::Felsch;
  if (s == "hlt") return Strategy::HLT;
  throw UsageError("unknown strategy " + s + " (expected felsch or hlt)");
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw UsageError("not an integer: " + std::string(s));
  return v;
}

// "lo..hi" or a single value.
NRange parse_n_range(std::string const& s) {
  NRange r;
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = parse_int(s);
  } else {
    r.lo = parse_int(std::string_view(s).substr(0, dots));
    r.hi = parse_int(std::string_view(s).substr(dots + 2));
  }
  if (r.lo < 2 || r.hi < r.lo || r.hi > 64) throw UsageError("--n must satisfy 2 <= lo <= hi <= 64");
  return r;
}

int exit_code(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::Pass: return exit_pass;
    case CheckOutcome::Fail: return exit_fail;
    case CheckOutcome::Inconclusive: return exit_inconclusive;
  }
  return exit_fail;
}

nlohmann::json replay_json(DerivationReport const& r) {
  nlohmann::json mismatches = nlohmann::json::array();
  for (auto const& m : r.mismatches) {
    mismatches.push_back({{"step", m.step + 1},
                          {"expected", m.expected.to_string()},
                          {"actual", m.actual.to_string()},
                          {"detail", m.detail}});
  }
  nlohmann::json j{{"toolkit_version", toolkit_version},
                   {"steps_applied", r.steps_applied},
                   {"isomorphism_preserving_prefix_length", r.isomorphism_preserving_prefix_length},
                   {"mismatches", mismatches},
                   {"final", r.final_presentation().to_string()},
                   {"outcome", r.ok() ? "pass" : "fail"}};
  j["halted"] = r.halted ? nlohmann::json{{"step", r.halted->step + 1}, {"message", r.halted->message}}
                         : nlohmann::json();
  return j;
}

struct Options {
  std::size_t max_cosets = default_max_cosets;
  std::string strategy = "felsch";
  std::string out_path;
  std::string n = "2..10";
  std::string file;
  std::string script;
  bool paper = false;
  std::size_t max_passes = 32;
  std::size_t degree = 5;
  std::size_t target_order = 60;
  std::uint64_t search_cap = 50'000'000;
  bool sequential = false;
};

int cmd_order(Options const& o, std::ostream& out) {
  Presentation p = load_presentation(o.file);
  auto e = enumerate(p, {}, parse_strategy(o.strategy), o.max_cosets);
  if (!e.completed()) {
    out << "inconclusive: more than " << o.max_cosets << " cosets needed\n";
    return exit_inconclusive;
  }
  auto defects = table_defects(e.table, p);
  if (!defects.empty()) {
    out << "table defect: " << defects.front() << '\n';
    return exit_fail;
  }
  out << e.index() << '\n';
  if (!o.out_path.empty()) write_file(o.out_path, e.table.dump(p));
  return exit_pass;
}

int cmd_abelianize(Options const& o, std::ostream& out) {
  Presentation p = load_presentation(o.file);
  AbelianInvariants inv = abelian_invariants(p);
  out << inv.to_string() << '\n';
  if (!o.out_path.empty()) write_file(o.out_path, inv.to_string() + "\n");
  return exit_pass;
}

int cmd_simplify(Options const& o, std::ostream& out) {
  Presentation p = load_presentation(o.file);
  Presentation s = greedy_simplify(p, o.max_passes);
  std::string text = print_presentation(s);
  out << text;
  if (!o.out_path.empty()) write_file(o.out_path, text);
  return exit_pass;
}

int cmd_replay(Options const& o, std::ostream& out) {
  Presentation start = o.paper ? complement_presentation() : Presentation({}, {});
  DerivationScript script;
  if (o.paper) {
    if (!o.file.empty() || !o.script.empty()) throw UsageError("--paper takes no files");
    script = derivation_script();
  } else {
    if (o.file.empty() || o.script.empty()) throw UsageError("replay needs FILE and SCRIPT, or --paper");
    start = load_presentation(o.file);
    try {
      script = parse_script(read_file(o.script), start.symbols());
    } catch (ParseError const& e) {
      throw UsageError(o.script + ": " + e.what());
    }
  }
  DerivationReport r = replay_derivation(start, script);
  for (std::size_t i = 0; i < r.steps_applied; ++i) {
    bool bad = std::any_of(r.mismatches.begin(), r.mismatches.end(), [i](auto const& m) { return m.step == i; });
    out << "step " << i + 1 << ' ' << to_string(kind_of(script.steps[i].move)) << (bad ? " MISMATCH" : " ok")
        << ": " << r.intermediate_presentations[i + 1].to_string() << '\n';
  }
  for (auto const& m : r.mismatches) {
    out << "mismatch at step " << m.step + 1 << ": " << m.detail << "\n  expected " << m.expected.to_string()
        << "\n  actual   " << m.actual.to_string() << '\n';
  }
  if (r.halted) out << "halted at step " << r.halted->step + 1 << ": " << r.halted->message << '\n';
  out << "isomorphism-preserving prefix: " << r.isomorphism_preserving_prefix_length << " steps\n";
  if (!o.out_path.empty()) write_file(o.out_path, replay_json(r).dump(2) + "\n");
  return r.ok() ? exit_pass : exit_fail;
}

int cmd_perm_search(Options const& o, std::ostream& out) {
  Presentation p = load_presentation(o.file);
  if (o.degree < 1 || o.degree > 9) throw UsageError("--degree must be between 1 and 9");
  auto s = find_epimorphism(p, o.degree, o.target_order, o.search_cap);
  switch (s.outcome) {
    case EpimorphismSearch::Outcome::Overflow:
      out << "inconclusive: search cap of " << o.search_cap << " nodes reached\n";
      return exit_inconclusive;
    case EpimorphismSearch::Outcome::None:
      out << "none: no assignment to even permutations of " << o.degree << " points with image of order "
          << o.target_order << " (" << s.nodes_visited << " nodes)\n";
      return exit_fail;
    case EpimorphismSearch::Outcome::Found: break;
  }
  std::ostringstream text;
  for (std::size_t i = 0; i < s.witness->images.size(); ++i) {
    text << p.symbols()[i] << " -> " << s.witness->images[i].to_cycle_string() << '\n';
  }
  out << text.str() << "image order " << o.target_order << " (" << s.nodes_visited << " nodes)\n";
  if (!o.out_path.empty()) write_file(o.out_path, text.str());
  return exit_pass;
}

int cmd_verify(Options const& o, std::ostream& out) {
  VerifyLimits limits;
  limits.max_cosets = o.max_cosets;
  limits.strategy = parse_strategy(o.strategy);
  limits.search_cap = o.search_cap;
  limits.parallel = !o.sequential;
  VerificationReport r = verify_paper(PaperData::bundled(), parse_n_range(o.n), limits);
  for (auto const& c : r.checks) {
    out << to_string(c.outcome) << "  " << c.id << ": " << c.details << '\n';
  }
  if (r.complement_order) out << "complement group order: " << *r.complement_order << '\n';
  out << "overall: " << to_string(r.overall()) << '\n';
  if (!o.out_path.empty()) write_file(o.out_path, to_json(r).dump(2) + "\n");
  return exit_code(r.overall());
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finitely presented group checks", "fpcheck"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(toolkit_version));

  auto add_limits = [&o](CLI::App* c) {
    c->add_option("--max-cosets", o.max_cosets, "Coset enumeration cap")->check(CLI::PositiveNumber);
    c->add_option("--strategy", o.strategy, "felsch or hlt");
  };
  auto add_out = [&o](CLI::App* c, char const* what) { c->add_option("--out", o.out_path, what); };

  auto* order_cmd = app.add_subcommand("order", "Order of the presented group by coset enumeration");
  order_cmd->add_option("FILE", o.file, "Presentation file")->required();
  add_limits(order_cmd);
  add_out(order_cmd, "Write the coset table");

  auto* ab_cmd = app.add_subcommand("abelianize", "Abelian invariants of the presented group");
  ab_cmd->add_option("FILE", o.file, "Presentation file")->required();
  add_out(ab_cmd, "Write the invariants");

  auto* simp_cmd = app.add_subcommand("simplify", "Shorten a presentation by Tietze moves");
  simp_cmd->add_option("FILE", o.file, "Presentation file")->required();
  simp_cmd->add_option("--max-passes", o.max_passes, "Pass limit");
  add_out(simp_cmd, "Write the simplified presentation");

  auto* replay_cmd = app.add_subcommand("replay", "Replay a derivation script");
  replay_cmd->add_option("FILE", o.file, "Starting presentation file");
  replay_cmd->add_option("SCRIPT", o.script, "Derivation script file");
  replay_cmd->add_flag("--paper", o.paper, "Replay the bundled derivation");
  add_out(replay_cmd, "Write a JSON replay report");

  auto* perm_cmd = app.add_subcommand("perm-search", "Search for a map onto a group of even permutations");
  perm_cmd->add_option("FILE", o.file, "Presentation file")->required();
  perm_cmd->add_option("--degree", o.degree, "Number of points");
  perm_cmd->add_option("--order", o.target_order, "Required order of the image");
  perm_cmd->add_option("--cap", o.search_cap, "Search node cap");
  add_out(perm_cmd, "Write the witness");

  auto* verify_cmd = app.add_subcommand("verify-paper", "Run every bundled check");
  verify_cmd->add_option("--n", o.n, "Dimension range lo..hi");
  add_limits(verify_cmd);
  verify_cmd->add_option("--cap", o.search_cap, "Permutation search node cap");
  verify_cmd->add_flag("--sequential", o.sequential, "Run checks one at a time");
  add_out(verify_cmd, "Write the JSON report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return exit_pass;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (CLI::CallForVersion const&) {
    out << toolkit_version << '\n';
    return exit_pass;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (order_cmd->parsed()) return cmd_order(o, out);
    if (ab_cmd->parsed()) return cmd_abelianize(o, out);
    if (simp_cmd->parsed()) return cmd_simplify(o, out);
    if (replay_cmd->parsed()) return cmd_replay(o, out);
    if (perm_cmd->parsed()) return cmd_perm_search(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
  } catch (UsageError const& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (std::invalid_argument const& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  }
  return exit_usage;
}

}  // namespace fpcheck::cli
