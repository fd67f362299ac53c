// Command-line front end. Links only the C interface.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iet_c.h"

namespace {

// 0 success, 1 failed check or runtime failure, 2 malformed input
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitMalformed = 2;

struct Owned {
  char* text = nullptr;
  ~Owned() { iet_string_free(text); }
  std::string str() const { return text ? text : ""; }
};

struct MapHandle {
  iet_map* map = nullptr;
  ~MapHandle() { iet_map_destroy(map); }
};

struct Failure {
  int exit_code;
  std::string message;
};

int exit_for(iet_status s) {
  if (s == IET_OK) return kExitOk;
  return s == IET_E_INVALID ? kExitMalformed : kExitFailure;
}

void check(iet_status s, const std::string& what) {
  if (s != IET_OK) throw Failure{exit_for(s), what + ": " + iet_status_name(s) + ": " + iet_last_error()};
}

// Inline JSON when the argument starts with '{', otherwise a file path.
std::string read_iet_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw Failure{kExitMalformed, "cannot read IET file '" + arg + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load(const std::string& arg, MapHandle& h) { check(iet_map_from_json(read_iet_arg(arg).c_str(), &h.map), "iet"); }

class Output {
 public:
  void set_path(std::string path) { path_ = std::move(path); }
  void write(const std::string& text) {
    if (path_.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw Failure{kExitFailure, "cannot write '" + path_ + "'"};
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }

 private:
  std::string path_;
};

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kExitMalformed, "bad integer '" + item + "' in list"};
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact interval exchange transformations"};
  app.fallthrough();  // -o may follow the subcommand
  app.require_subcommand(1);
  std::string output_path;
  app.add_option("-o,--output", output_path, "Write the result to FILE instead of stdout");

  std::string iet_arg;
  int64_t n = 1;
  int64_t cap = 1000000;

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Images of a point or interval set under T^n");
  std::vector<std::string> xs;
  std::string set_arg;
  simulate->add_option("--iet", iet_arg, "IET as inline JSON or file")->required();
  auto* x_opt = simulate->add_option("--x", xs, "Point(s) in [0,|lambda|)");
  auto* set_opt = simulate->add_option("--set", set_arg, "Interval set lo,hi;lo,hi");
  x_opt->excludes(set_opt);
  simulate->add_option("--n", n, "Power, may be negative")->capture_default_str();

  // induce
  auto* induce = app.add_subcommand("induce", "Rauzy-Veech trace or first-return map");
  std::string interval;
  induce->add_option("--iet", iet_arg, "IET as inline JSON or file")->required();
  auto* induce_n = induce->add_option("--n", n, "Number of Rauzy-Veech steps")->check(CLI::PositiveNumber);
  auto* induce_l = induce->add_option("--interval", interval, "Induce on [0,L)");
  induce_n->excludes(induce_l);
  induce->add_option("--cap", cap, "Return-time cap")->check(CLI::PositiveNumber)->capture_default_str();

  // rauzy
  auto* rauzy = app.add_subcommand("rauzy", "Rauzy classes and induction");
  rauzy->require_subcommand(1);
  auto* rauzy_class = rauzy->add_subcommand("class", "Rauzy diagram of a permutation");
  std::string pi_arg, dot_path;
  rauzy_class->add_option("--pi", pi_arg, "Permutation, e.g. 3,2,1")->required();
  rauzy_class->add_option("--dot", dot_path, "Write the DOT graph to FILE");
  auto* rauzy_iterate = rauzy->add_subcommand("iterate", "Per-step Rauzy-Veech CSV");
  rauzy_iterate->add_option("--iet", iet_arg, "IET as inline JSON or file")->required();
  rauzy_iterate->add_option("--n", n, "Number of steps")->check(CLI::PositiveNumber)->capture_default_str();

  // verify-lemma2
  auto* lemma2 = app.add_subcommand("verify-lemma2", "Return-time identity over random reverse paths");
  size_t samples = 100;
  int max_path_len = 8;
  uint64_t seed = 1;
  lemma2->add_option("--samples", samples)->check(CLI::PositiveNumber)->capture_default_str();
  lemma2->add_option("--max-path-len", max_path_len)->check(CLI::Range(2, 64))->capture_default_str();
  lemma2->add_option("--seed", seed)->capture_default_str();

  // towers
  auto* towers = app.add_subcommand("towers", "Tower report (defaults to the Z* return data)");
  std::string base_arg;
  int64_t height = 0;
  towers->add_option("--iet", iet_arg, "IET as inline JSON or file")->required();
  auto* base_opt = towers->add_option("--base", base_arg, "Tower base lo,hi");
  auto* height_opt = towers->add_option("--height", height)->check(CLI::PositiveNumber);
  base_opt->needs(height_opt);
  height_opt->needs(base_opt);
  int64_t zstar_cap = 100000;
  towers->add_option("--cap", zstar_cap, "Induction step cap")->check(CLI::PositiveNumber)->capture_default_str();

  // whirly
  auto* whirly = app.add_subcommand("whirly", "Whirly constructions, claims and probe");
  whirly->require_subcommand(1);
  std::string eps, eps1 = "1/100", eps2 = "1/100", alpha;
  int64_t l = 1, depth = 200;
  int metric_n = 20;
  int64_t small_powers = 16;
  std::string mode = "self", e_arg, f_arg, candidates_arg;

  auto* probe = whirly->add_subcommand("probe", "Search for T^n close to Id with overlap");
  probe->add_option("--iet", iet_arg, "IET as inline JSON or file")->required();
  probe->add_option("--eps", eps)->required();
  probe->add_option("--l", l)->check(CLI::PositiveNumber)->capture_default_str();
  probe->add_option("--depth", depth)->check(CLI::PositiveNumber)->capture_default_str();
  probe->add_option("--metric-N", metric_n)->check(CLI::PositiveNumber)->capture_default_str();
  probe->add_option("--mode", mode)->check(CLI::IsMember({"self", "pair"}))->capture_default_str();
  probe->add_option("--E", e_arg, "Set E as lo,hi;lo,hi (default [0,|lambda|/2))");
  probe->add_option("--F", f_arg, "Set F for pair mode");
  probe->add_option("--small-powers", small_powers)->check(CLI::NonNegativeNumber)->capture_default_str();
  probe->add_option("--candidates", candidates_arg, "Explicit powers n1,n2,...");

  auto* claims = whirly->add_subcommand("claims", "Tower claims at a point of W");
  claims->add_option("--alpha", alpha, "a1,a2,a3")->required();
  claims->add_option("--eps1", eps1)->capture_default_str();
  claims->add_option("--eps2", eps2)->capture_default_str();
  claims->add_option("--l", l)->check(CLI::PositiveNumber)->capture_default_str();

  auto* construct = whirly->add_subcommand("construct", "Build lambda = B^2 alpha");
  construct->add_option("--alpha", alpha, "a1,a2,a3")->required();
  construct->add_option("--eps1", eps1)->capture_default_str();
  construct->add_option("--eps2", eps2)->capture_default_str();

  auto* major = whirly->add_subcommand("major", "Window stages and tower estimates for (eps, l)");
  major->add_option("--iet", iet_arg, "IET as inline JSON or file")->required();
  major->add_option("--eps", eps)->required();
  major->add_option("--l", l)->check(CLI::PositiveNumber)->capture_default_str();
  major->add_option("--depth", depth)->check(CLI::PositiveNumber)->capture_default_str();

  auto* lemma35 = whirly->add_subcommand("lemma35", "First window stage and its column bound");
  lemma35->add_option("--iet", iet_arg, "IET as inline JSON or file")->required();
  lemma35->add_option("--depth", depth)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  Output out;
  out.set_path(output_path);
  try {
    if (*simulate) {
      MapHandle h;
      load(iet_arg, h);
      if (*set_opt) {
        Owned r;
        check(iet_map_image_set(h.map, set_arg.c_str(), n, &r.text), "simulate");
        out.write(r.str());
      } else {
        if (xs.empty()) throw Failure{kExitMalformed, "simulate needs --x or --set"};
        std::string text;
        for (const auto& x : xs) {
          Owned r;
          check(iet_map_apply(h.map, x.c_str(), n, &r.text), "simulate");
          text += r.str() + "\n";
        }
        out.write(text);
      }
    } else if (*induce || *rauzy_iterate) {
      MapHandle h;
      load(iet_arg, h);
      if (*induce && *induce_l) {
        MapHandle induced;
        check(iet_map_induce(h.map, interval.c_str(), cap, &induced.map), "induce");
        Owned r;
        check(iet_map_to_json(induced.map, &r.text), "induce");
        out.write(r.str());
      } else {
        Owned r;
        int64_t stopped = 0;
        iet_status s = iet_rauzy_trace_csv(h.map, n, &r.text, &stopped);
        if (s == IET_E_CONNECTION && r.text != nullptr) out.write(r.str());
        check(s, "rauzy-veech");
        out.write(r.str());
      }
    } else if (*rauzy_class) {
      Owned r;
      size_t nodes = 0;
      check(iet_rauzy_class_dot(pi_arg.c_str(), &r.text, &nodes), "rauzy class");
      if (!dot_path.empty()) {
        Output dot;
        dot.set_path(dot_path);
        dot.write(r.str());
        out.write(std::to_string(nodes) + " permutations written to " + dot_path);
      } else {
        out.write(r.str());
      }
    } else if (*lemma2) {
      Owned r;
      int ok = 0;
      check(iet_verify_lemma2_csv(samples, max_path_len, seed, &r.text, &ok), "verify-lemma2");
      out.write(r.str());
      if (!ok) {
        std::cerr << "verify-lemma2: identity violated\n";
        return kExitFailure;
      }
    } else if (*towers) {
      MapHandle h;
      load(iet_arg, h);
      Owned r;
      if (*base_opt) {
        auto comma = base_arg.find(',');
        if (comma == std::string::npos) throw Failure{kExitMalformed, "--base expects lo,hi"};
        const std::string lo = base_arg.substr(0, comma), hi = base_arg.substr(comma + 1);
        check(iet_tower_json(h.map, lo.c_str(), hi.c_str(), height, &r.text), "towers");
      } else {
        check(iet_return_towers_json(h.map, zstar_cap, &r.text), "towers");
      }
      out.write(r.str());
    } else if (*probe) {
      MapHandle h;
      load(iet_arg, h);
      iet_probe_options opt;
      iet_probe_options_init(&opt);
      opt.eps = eps.c_str();
      opt.l = l;
      opt.depth = depth;
      opt.metric_n = metric_n;
      opt.pair_mode = mode == "pair" ? 1 : 0;
      opt.set_e = e_arg.empty() ? nullptr : e_arg.c_str();
      opt.set_f = f_arg.empty() ? nullptr : f_arg.c_str();
      opt.small_powers = small_powers;
      std::vector<int64_t> candidates;
      if (!candidates_arg.empty()) {
        candidates = parse_int_list(candidates_arg);
        opt.candidates = candidates.data();
        opt.candidate_count = candidates.size();
      }
      Owned r;
      int success = 0;
      check(iet_whirly_probe_json(h.map, &opt, &r.text, &success), "whirly probe");
      out.write(r.str());
    } else if (*claims) {
      Owned r;
      int ok = 0;
      check(iet_whirly_claims_csv(alpha.c_str(), eps1.c_str(), eps2.c_str(), l, &r.text, &ok), "whirly claims");
      out.write(r.str());
      if (!ok) {
        std::cerr << "whirly claims: at least one relation fails\n";
        return kExitFailure;
      }
    } else if (*construct) {
      MapHandle h;
      check(iet_whirly_construct(alpha.c_str(), eps1.c_str(), eps2.c_str(), &h.map), "whirly construct");
      Owned r;
      check(iet_map_to_json(h.map, &r.text), "whirly construct");
      out.write(r.str());
    } else if (*major || *lemma35) {
      MapHandle h;
      load(iet_arg, h);
      Owned r;
      int ok = 0;
      if (*major) {
        check(iet_whirly_major_json(h.map, eps.c_str(), l, depth, &r.text, &ok), "whirly major");
      } else {
        check(iet_whirly_lemma35_json(h.map, depth, &r.text, &ok), "whirly lemma35");
      }
      out.write(r.str());
      if (!ok) return kExitFailure;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  }
  return kExitOk;
}
