#pragma once

// Command-line surface: parsing, comparison, standardness, conversion,
// fundamental sequences, hierarchy evaluation, and enumeration, with a text
// or JSON envelope around every result.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ordinalforge/buchholz.hpp"
#include "ordinalforge/classic_veblen.hpp"
#include "ordinalforge/cnf_oracle.hpp"
#include "ordinalforge/errors.hpp"
#include "ordinalforge/hierarchy.hpp"
#include "ordinalforge/term.hpp"
#include "ordinalforge/term_io.hpp"

namespace ordinalforge::cli {

using nlohmann::json;

inline json to_json(const ArrayTerm& a);

inline json to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return json{{"kind", "zero"}};
    case Term::Kind::Sum: {
      json parts = json::array();
      for (const Term& p : t.parts()) parts.push_back(to_json(p));
      return json{{"kind", "sum"}, {"parts", parts}};
    }
    default:
      return json{{"kind", "phi"}, {"array", to_json(t.array())}};
  }
}

inline json to_json(const ArrayTerm& a) {
  json entries = json::array();
  for (const auto& e : a.entries()) {
    entries.push_back(json{{"coefficient", to_json(e.coefficient)}, {"position", to_json(e.position)}});
  }
  return entries;
}

inline ArrayTerm array_from_json(const json& j);

inline Term term_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "zero") return Term::zero();
  if (kind == "sum") {
    std::vector<Term> parts;
    for (const auto& p : j.at("parts")) parts.push_back(term_from_json(p));
    return Term::sum(std::move(parts));
  }
  return Term::phi(array_from_json(j.at("array")));
}

inline ArrayTerm array_from_json(const json& j) {
  std::vector<ArrayEntry> entries;
  for (const auto& e : j) {
    entries.push_back(ArrayEntry{term_from_json(e.at("coefficient")), array_from_json(e.at("position"))});
  }
  return ArrayTerm::make(std::move(entries));
}

struct Envelope {
  int exit_code = 0;  // 0 ok, 1 user error, 2 internal invariant failure
  std::string command;
  std::string text;
  json structured;
  std::vector<std::string> diagnostics;
};

inline json envelope_to_json(const Envelope& e) {
  json j{{"status", e.exit_code == 0 ? "ok" : "error"},
         {"command", e.command},
         {"result", json{{"text", e.text}, {"structured", e.structured}}}};
  json d = json::array();
  for (const auto& s : e.diagnostics) d.push_back(s);
  j["diagnostics"] = d;
  return j;
}

namespace detail {

inline std::uint64_t default_fuel() {
  if (const char* env = std::getenv("ORDINALFORGE_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

inline Term parse_fs_input(const std::string& text) {
  if (text.rfind("phi*", 0) == 0) return veblen::star_term(veblen::parse_star(text));
  return parse_term(text);
}

inline json term_result(const Term& t, Envelope& env) {
  env.text = print(t);
  env.structured = json{{"term", to_json(t)}, {"text", env.text}};
  return env.structured;
}

struct Args {
  std::vector<std::string> rest;
  std::size_t i = 0;

  bool done() const { return i >= rest.size(); }
  const std::string& peek() const { return rest[i]; }
  std::string next(const char* what) {
    if (done()) throw Error(std::string("missing argument: ") + what);
    return rest[i++];
  }
  std::uint64_t next_nat(const char* what) {
    std::string s = next(what);
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (!end || *end != '\0') throw Error(std::string("expected a number for ") + what);
    return v;
  }
};

inline cnf::BVTerm parse_bv(const std::string& text);

inline cnf::BVTerm parse_bv_inner(const std::string& text) {
  std::string s = text;
  if (s.rfind("phi(", 0) == 0 && s.back() == ')') {
    std::string body = s.substr(4, s.size() - 5);
    int depth = 0;
    for (std::size_t k = 0; k < body.size(); ++k) {
      if (body[k] == '(') ++depth;
      if (body[k] == ')') --depth;
      if (body[k] == ',' && depth == 0)
        return cnf::BVTerm::phi(parse_bv(body.substr(0, k)), parse_bv(body.substr(k + 1)));
    }
    throw Error("expected phi(a,b)");
  }
  auto c = cnf::term_to_cnf(parse_term(s));
  if (!c) throw Error("oracle leaf is not below epsilon_0: " + s);
  return cnf::BVTerm::leaf(*c);
}

inline cnf::BVTerm parse_bv(const std::string& text) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  return parse_bv_inner(text.substr(b, e - b + 1));
}

}  // namespace detail

// Executes one query (subcommand plus arguments) and fills the envelope.
inline Envelope run_one(const std::vector<std::string>& args) {
  Envelope env;
  {
    std::string echo;
    for (const auto& a : args) {
      if (!echo.empty()) echo += " ";
      echo += a;
    }
    env.command = echo;
  }
  detail::Args in{args};
  try {
    std::string cmd = in.next("subcommand");
    if (cmd == "compare") {
      Term a = parse_term(in.next("first term"));
      Term b = parse_term(in.next("second term"));
      Ordering o = compare(a, b);
      env.text = to_symbol(o);
      env.structured = json{{"relation", env.text}};
    } else if (cmd == "std") {
      Term t = parse_term(in.next("term"));
      auto r = check_standard(t);
      if (r.ok) {
        env.text = "standard";
        env.structured = json{{"standard", true}};
      } else {
        env.text = "non-standard (clause " + r.clause + ")";
        env.structured = json{{"standard", false}, {"clause", r.clause}};
        if (r.offender) {
          env.structured["offender"] = print(*r.offender);
          env.diagnostics.push_back("clause " + r.clause + " fails at " + print(*r.offender));
        }
      }
    } else if (cmd == "psi0") {
      buchholz::OmegaTerm a = buchholz::parse_omega(in.next("omega term"));
      Term r = buchholz::psi0_convert(a);
      detail::term_result(r, env);
      env.diagnostics.push_back("t = " + buchholz::print(buchholz::t_map(a)));
    } else if (cmd == "v") {
      buchholz::OmegaTerm a = buchholz::parse_omega(in.next("omega term"));
      ArrayTerm r = buchholz::v_map(a);
      env.text = print(r);
      env.structured = json{{"array", to_json(r)}, {"text", env.text}};
    } else if (cmd == "t") {
      buchholz::OmegaTerm a = buchholz::parse_omega(in.next("omega term"));
      buchholz::OmegaTerm r = buchholz::t_map(a);
      env.text = buchholz::print(r);
      env.structured = json{{"text", env.text}};
    } else if (cmd == "fs") {
      Term t = detail::parse_fs_input(in.next("term"));
      std::uint64_t n = in.next_nat("index");
      hierarchy::FsSystem sys = hierarchy::FsSystem::ClassBased;
      while (!in.done()) {
        std::string flag = in.next("flag");
        if (flag == "--system") {
          std::string v = in.next("system");
          if (v == "class") sys = hierarchy::FsSystem::ClassBased;
          else if (v == "norm") sys = hierarchy::FsSystem::NormBased;
          else throw Error("unknown system: " + v);
        } else {
          throw Error("unknown flag: " + flag);
        }
      }
      Term r = sys == hierarchy::FsSystem::ClassBased
                   ? veblen::fs_term(t, static_cast<std::size_t>(n))
                   : hierarchy::fs_norm(t, static_cast<std::size_t>(n));
      detail::term_result(r, env);
    } else if (cmd == "hardy" || cmd == "fgh") {
      Term t = parse_term(in.next("term"));
      std::uint64_t n = in.next_nat("argument");
      hierarchy::Fuel fuel{detail::default_fuel()};
      hierarchy::FsSystem sys = hierarchy::FsSystem::ClassBased;
      while (!in.done()) {
        std::string flag = in.next("flag");
        if (flag == "--fuel") fuel.remaining = in.next_nat("fuel");
        else if (flag == "--system") {
          std::string v = in.next("system");
          if (v == "class") sys = hierarchy::FsSystem::ClassBased;
          else if (v == "norm") sys = hierarchy::FsSystem::NormBased;
          else throw Error("unknown system: " + v);
        } else {
          throw Error("unknown flag: " + flag);
        }
      }
      auto r = cmd == "hardy" ? hierarchy::hardy(t, n, sys, fuel) : hierarchy::fgh(t, n, sys, fuel);
      if (r.status == hierarchy::HierarchyResult::Status::Value) {
        env.text = std::to_string(r.value);
        env.structured = json{{"value", r.value}, {"steps", r.steps}};
      } else if (r.status == hierarchy::HierarchyResult::Status::FuelExhausted) {
        env.exit_code = 1;
        env.text = "error: fuel exhausted after " + std::to_string(r.steps) + " steps";
        env.structured = json{{"error", "fuel-exhausted"}, {"steps", r.steps}};
      } else {
        env.exit_code = 1;
        env.text = "error: no fundamental sequence available";
        env.structured = json{{"error", "fs-unavailable"}, {"steps", r.steps}};
        env.diagnostics.push_back(r.note);
      }
    } else if (cmd == "enum") {
      std::size_t max_norm = 0;
      bool count_only = false;
      while (!in.done()) {
        std::string flag = in.next("flag");
        if (flag == "--max-norm") max_norm = static_cast<std::size_t>(in.next_nat("max norm"));
        else if (flag == "--count-only") count_only = true;
        else throw Error("unknown flag: " + flag);
      }
      auto terms = hierarchy::enumerate_standard({max_norm, 200000});
      if (count_only) {
        env.text = std::to_string(terms.size());
        env.structured = json{{"count", terms.size()}};
      } else {
        std::string lines;
        json arr = json::array();
        for (const Term& t : terms) {
          if (!lines.empty()) lines += "\n";
          std::string p = print(t);
          lines += p;
          arr.push_back(p);
        }
        env.text = lines;
        env.structured = json{{"count", terms.size()}, {"terms", arr}};
      }
    } else if (cmd == "oracle") {
      std::string sub = in.next("oracle subcommand");
      if (sub == "cnf-compare") {
        auto a = cnf::term_to_cnf(parse_term(in.next("first term")));
        auto b = cnf::term_to_cnf(parse_term(in.next("second term")));
        if (!a || !b) throw Error("term is not below epsilon_0");
        env.text = to_symbol(cnf::cnf_compare(*a, *b));
        env.structured = json{{"relation", env.text}};
      } else if (sub == "cnf-add") {
        auto a = cnf::term_to_cnf(parse_term(in.next("first term")));
        auto b = cnf::term_to_cnf(parse_term(in.next("second term")));
        if (!a || !b) throw Error("term is not below epsilon_0");
        env.text = cnf::cnf_to_string(cnf::cnf_add(*a, *b));
        env.structured = json{{"text", env.text}};
      } else if (sub == "bv-compare") {
        cnf::BVTerm a = detail::parse_bv(in.next("first expression"));
        cnf::BVTerm b = detail::parse_bv(in.next("second expression"));
        env.text = to_symbol(cnf::binary_veblen_compare(a, b));
        env.structured = json{{"relation", env.text}};
      } else {
        throw Error("unknown oracle subcommand: " + sub);
      }
    } else {
      throw Error("unknown subcommand: " + cmd);
    }
  } catch (const InvariantError& e) {
    env.exit_code = 2;
    env.text = std::string("internal error: ") + e.what();
    env.structured = json{{"error", e.what()}};
  } catch (const std::exception& e) {
    env.exit_code = 1;
    env.text = std::string("error: ") + e.what();
    env.structured = json{{"error", e.what()}};
  }
  return env;
}

inline void write_envelope(const Envelope& env, bool as_json, bool verbose, std::ostream& out) {
  if (as_json) {
    out << envelope_to_json(env).dump() << "\n";
    return;
  }
  out << env.text << "\n";
  if (verbose) {
    for (const auto& d : env.diagnostics) out << "# " << d << "\n";
  }
}

inline const char* usage_text() {
  return "usage: ordinalforge [--format text|json] [-v] [--in FILE] <subcommand> [args]\n"
         "\n"
         "subcommands:\n"
         "  compare A B            order two terms: prints <, =, or >\n"
         "  std T                  standardness with the failing clause\n"
         "  psi0 OTERM             collapse a base-W normal form to a term\n"
         "  v OTERM                the array stage of the conversion\n"
         "  t OTERM                the preprocessing stage of the conversion\n"
         "  fs T N [--system class|norm]   fundamental sequence element\n"
         "  hardy T N [--fuel F] [--system S]  Hardy value\n"
         "  fgh T N [--fuel F] [--system S]    fast-growing value\n"
         "  enum [--max-norm K] [--count-only] standard terms by norm\n"
         "\n"
         "ORDINALFORGE_FUEL overrides the default evaluation fuel.\n";
}

// Entry point shared by the binary and the tests. Splits off global flags,
// then runs either one query or, with --in, one query per line of the file.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  bool as_json = false;
  bool verbose = false;
  std::string batch_file;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (rest.empty() && a == "--format") {
      if (i + 1 >= argv.size()) {
        err << "error: --format needs a value\n";
        return 1;
      }
      std::string v = argv[++i];
      if (v == "json") as_json = true;
      else if (v == "text") as_json = false;
      else {
        err << "error: unknown format " << v << "\n";
        return 1;
      }
    } else if (rest.empty() && (a == "-v" || a == "--verbose")) {
      verbose = true;
    } else if (rest.empty() && a == "--in") {
      if (i + 1 >= argv.size()) {
        err << "error: --in needs a file\n";
        return 1;
      }
      batch_file = argv[++i];
    } else if (rest.empty() && (a == "-h" || a == "--help")) {
      out << usage_text();
      return 0;
    } else {
      rest.push_back(a);
    }
  }

  if (!batch_file.empty()) {
    std::ifstream f(batch_file);
    if (!f) {
      err << "error: cannot open " << batch_file << "\n";
      return 1;
    }
    int worst = 0;
    std::string line;
    while (std::getline(f, line)) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      std::vector<std::string> args;
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) args.push_back(tok);
      Envelope env = run_one(args);
      write_envelope(env, as_json, verbose, out);
      worst = std::max(worst, env.exit_code);
    }
    return worst;
  }

  if (rest.empty()) {
    err << usage_text();
    return 1;
  }
  Envelope env = run_one(rest);
  write_envelope(env, as_json, verbose, out);
  return env.exit_code;
}

}  // namespace ordinalforge::cli
