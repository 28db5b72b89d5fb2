#pragma once

// Command-line frontend. Exit codes: 0 success, 1 an input object failed its
// check, 2 usage or input errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "upcycle/construct.hpp"
#include "upcycle/graphview.hpp"
#include "upcycle/liftfold.hpp"
#include "upcycle/necklace.hpp"
#include "upcycle/nonexist.hpp"
#include "upcycle/pseudorand.hpp"
#include "upcycle/pword.hpp"
#include "upcycle/search.hpp"
#include "upcycle/verify.hpp"

namespace upcycle::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NecklaceHeader {
  AlphabetSize a = 0;
  std::size_t n = 0, t = 0;
};

struct InputText {
  std::vector<std::string> words;
  std::optional<NecklaceHeader> header;
};

/// Non-blank, non-comment lines of a file ("-" or empty for `in`). A
/// `NECKLACE a= n= t=` line is captured as a header.
inline InputText read_input(const std::string& path, std::istream& in) {
  std::ifstream file;
  std::istream* src = &in;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw UsageError("cannot open " + path);
    src = &file;
  }
  InputText out;
  std::string line;
  while (std::getline(*src, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    line = line.substr(b);
    if (line.rfind("NECKLACE", 0) == 0) {
      NecklaceHeader h;
      std::istringstream ls(line.substr(8));
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("malformed necklace header: " + line);
        auto key = kv.substr(0, eq);
        auto val = std::stoull(kv.substr(eq + 1));
        if (key == "a") h.a = static_cast<AlphabetSize>(val);
        else if (key == "n") h.n = val;
        else if (key == "t") h.t = val;
      }
      out.header = h;
      continue;
    }
    out.words.push_back(line);
  }
  if (out.words.empty()) throw UsageError("no word in input");
  return out;
}

inline std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw UsageError("bad list element '" + item + "'");
    }
  }
  return out;
}

inline unsigned thread_count(unsigned flag) {
  if (const char* env = std::getenv("UPCYCLE_THREADS")) {
    try {
      return static_cast<unsigned>(std::max(1ul, std::stoul(env)));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad UPCYCLE_THREADS value '") + env + "'");
    }
  }
  return std::max(1u, flag);
}

struct WordOptions {
  std::string file;
  AlphabetSize a = 0;
  bool cyclic = false, linear = false;

  void attach(CLI::App* app) {
    app->add_option("file", file, "input file, one word per line (default stdin)");
    app->add_option("--a", a, "alphabet size (default: inferred from the letters)");
    auto* c = app->add_flag("--cyclic", cyclic, "read words as cyclic");
    app->add_flag("--linear", linear, "read words as linear")->excludes(c);
  }

  AlphabetSize alphabet_for(const std::string& text) const { return a ? a : infer_alphabet(text); }

  AnyWord parse(const std::string& text) const {
    const auto al = alphabet_for(text);
    if (cyclic) return parse_cyclic(text, al);
    if (linear) return parse_linear(text, al);
    return parse_auto(text, al);
  }

  CycPWord parse_cycle(const std::string& text) const { return parse_cyclic(text, alphabet_for(text)); }
};

inline std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

inline OffsetSet offsets_from(const std::string& text) {
  auto v = parse_list(text);
  return OffsetSet(v.begin(), v.end());
}

inline int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal partial cycles, perfect necklaces and De Bruijn cycles"};
  app.name("upcycle");
  app.require_subcommand(1);

  WordOptions wo;
  std::size_t n = 0;
  std::size_t t = 0;
  int code = 0;

  // verify
  auto* verify = app.add_subcommand("verify", "certify upcycles, upwords or perfect necklaces");
  wo.attach(verify);
  verify->add_option("--n", n, "word length")->required();
  verify->add_option("--t", t, "check (a,n,t)-perfect necklaces instead");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "TSV report of balance, runs, PSD and R-3");
  analyze->add_option("file", wo.file, "input file (default stdin)");
  analyze->add_option("--a", wo.a, "alphabet size");
  analyze->add_option("--n", n, "word length")->required();
  bool r3_lift = false;
  analyze->add_flag("--lift", r3_lift, "test R-3 on the De Bruijn lift of a partial upcycle");

  // necklace
  auto* necklace = app.add_subcommand("necklace", "construct a perfect necklace");
  AlphabetSize na = 2;
  std::string method = "euler", contain, base_file;
  bool zeros = false;
  std::size_t q = 2, r = 1;
  necklace->add_option("--a", na, "alphabet size");
  necklace->add_option("--n", n, "order");
  necklace->add_option("--t", t, "period multiplier");
  necklace->add_option("--method", method, "euler | lex | stretch | rotate | reflect")
      ->check(CLI::IsMember({"euler", "lex", "stretch", "rotate", "reflect"}));
  necklace->add_flag("--zeros-prefix", zeros, "euler: begin with t zeros");
  necklace->add_option("--contain", contain, "euler: contain this total word of length n");
  necklace->add_option("--base", base_file, "stretch/rotate/reflect: input necklace or De Bruijn cycle file");
  necklace->add_option("--q", q, "stretch factor");
  necklace->add_option("--r", r, "rotate_expand shift");

  // multiply
  auto* multiply = app.add_subcommand("multiply", "alphabet multiplier a*v + u^(k^(n-d))");
  wo.attach(multiply);
  AlphabetSize k = 2;
  std::string filler_kind = "euler";
  std::string filler_file;
  multiply->add_option("--n", n, "word length")->required();
  multiply->add_option("--k", k, "alphabet multiplier")->required();
  multiply->add_option("--filler", filler_kind, "euler | lex")->check(CLI::IsMember({"euler", "lex"}));
  multiply->add_option("--necklace", filler_file, "explicit filler necklace file");

  // lift
  auto* liftc = app.add_subcommand("lift", "lift an upcycle to lower diamondicity");
  wo.attach(liftc);
  std::string offsets_text;
  bool enumerate = false;
  std::optional<std::size_t> max_results;
  liftc->add_option("--n", n, "word length")->required();
  liftc->add_option("--necklace", filler_file, "filler necklace file");
  liftc->add_option("--offsets", offsets_text, "selected diamond residues mod n, comma separated");
  liftc->add_flag("--enumerate", enumerate, "all De Bruijn lifts up to rotation");
  liftc->add_option("--max", max_results, "stop enumeration after this many cycles");

  // fold
  auto* fold = app.add_subcommand("fold", "fold an upcycle to higher diamondicity");
  wo.attach(fold);
  std::size_t delta = 1;
  fold->add_option("--n", n, "word length")->required();
  fold->add_option("--delta", delta, "diamondicity increase");
  fold->add_option("--offsets", offsets_text, "new diamond residues mod n, comma separated")->required();

  // graph
  auto* graph = app.add_subcommand("graph", "S(u) or T(u) as DOT, or the perfect factor");
  wo.attach(graph);
  std::string model = "s", out_path;
  bool factor = false;
  graph->add_option("--n", n, "word length")->required();
  graph->add_option("--model", model, "s | t")->check(CLI::IsMember({"s", "t"}));
  graph->add_option("--out", out_path, "write DOT here instead of stdout");
  graph->add_flag("--factor", factor, "print the perfect factor cycles instead");

  // dn
  auto* dn = app.add_subcommand("dn", "table of D(n)");
  std::size_t dn_min = 1, dn_max = 16;
  dn->add_option("--min", dn_min, "first n");
  dn->add_option("--max", dn_max, "last n")->check(CLI::Range(std::size_t{1}, kMaxDn));

  // feasible
  auto* feasible = app.add_subcommand("feasible", "feasibility verdict for (a,n,d), or the table");
  std::optional<AlphabetSize> fa;
  std::optional<std::size_t> fd;
  std::size_t lo = 4, hi = 12;
  feasible->add_option("--a", fa, "alphabet size");
  feasible->add_option("--n", n, "word length");
  feasible->add_option("--d", fd, "diamondicity");
  feasible->add_option("--from", lo, "table: first n");
  feasible->add_option("--to", hi, "table: last n");

  // search
  auto* search = app.add_subcommand("search", "backtracking search for upcycles");
  SearchSpec spec;
  spec.exhaustive = false;
  std::string seed;
  unsigned threads = 1;
  search->add_option("--a", spec.a, "alphabet size")->required();
  search->add_option("--n", spec.n, "word length")->required();
  search->add_option("--d", spec.d, "diamondicity")->required();
  search->add_option("--offsets", offsets_text, "diamond residues mod n, comma separated");
  search->add_option("--seed", seed, "fixed prefix");
  search->add_flag("--exhaustive", spec.exhaustive, "all results up to rotation");
  search->add_option("--limit", spec.limit, "stop after this many results");
  search->add_option("--threads", threads, "worker threads (UPCYCLE_THREADS overrides)");

  // crossjoin
  auto* crossjoin = app.add_subcommand("crossjoin", "cross-join an upword or upcycle");
  wo.attach(crossjoin);
  std::string xs, ys, at;
  bool candidates = false;
  crossjoin->add_option("--n", n, "word length")->required();
  crossjoin->add_option("--x", xs, "repeated word of length n-1");
  crossjoin->add_option("--y", ys, "repeated word of length n-1");
  crossjoin->add_option("--at", at, "ix,iy,jx,jy (1-based)");
  crossjoin->add_flag("--candidates", candidates, "list every applicable (x,y,sites)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  auto provenance = [&](const std::string& what) { out << "# provenance: " << what << "\n"; };

  try {
    if (verify->parsed()) {
      auto text = read_input(wo.file, in);
      for (const auto& s : text.words) {
        if (t > 0 || text.header) {
          std::size_t tt = t ? t : text.header->t;
          auto w = wo.parse_cycle(s);
          bool ok = verify_perfect_necklace(w, w.alphabet_size(), n, tt);
          out << (ok ? "VALID" : "INVALID") << " NECKLACE a=" << w.alphabet_size() << " n=" << n
              << " t=" << tt << "\n";
          if (!ok) code = 1;
          continue;
        }
        auto w = wo.parse(s);
        auto rep = std::visit(
            [&](const auto& x) {
              if constexpr (std::is_same_v<std::decay_t<decltype(x)>, CycPWord>) return verify_upcycle(x, n);
              else return verify_upword(x, n);
            },
            w);
        out << rep.to_string() << "\n";
        if (!rep.valid) code = 1;
      }
      return code;
    }

    if (analyze->parsed()) {
      auto text = read_input(wo.file, in);
      for (const auto& s : text.words) {
        auto u = wo.parse_cycle(s);
        out << "word\t" << format(u) << "\n";
        auto b = balance(u);
        out << "balance";
        for (auto c : b.counts) out << "\t" << c;
        out << "\t" << (b.balanced ? "balanced" : "unbalanced") << "\n";
        auto rt = run_counts(u, n);
        for (std::size_t l = 0; l < rt.runs.size(); ++l) {
          out << "runs\t" << letter_glyph(static_cast<std::uint32_t>(l));
          for (const auto& e : rt.runs[l]) out << "\t" << to_string(e);
          out << "\n";
        }
        if (rt.r2) out << "r2\t" << (*rt.r2 ? "holds" : "fails") << "\n";
        auto rep = verify_upcycle(u, n);
        if (rep.valid) {
          auto psd = check_psd(u, n);
          out << "psd\t" << (psd.holds ? "holds" : "fails");
          if (!psd.holds) {
            out << "\t" << format(*psd.witness) << "\t" << to_string(psd.actual) << "\t" << to_string(psd.expected);
          }
          out << "\n";
          std::optional<CycPWord> db;
          if (rep.params->d == 0) db = u;
          else if (r3_lift) db = debruijn_lift(u, n);
          if (db && n >= 1) {
            auto v = check_r3(*db);
            out << "r3\t" << (v.holds ? "holds" : "fails");
            if (!v.holds) out << "\t" << join(v.failing_tau, " ");
            out << "\n";
          } else {
            out << "r3\tn/a\n";
          }
        } else {
          out << "psd\tn/a\t" << rep.to_string() << "\n";
          code = 1;
        }
      }
      return code;
    }

    if (necklace->parsed()) {
      std::optional<Necklace> res;
      auto base = [&] {
        if (base_file.empty()) throw UsageError("--base is required for --method " + method);
        auto text = read_input(base_file, in);
        auto w = parse_cyclic(text.words.front(), text.header ? text.header->a : infer_alphabet(text.words.front()));
        return std::make_pair(w, text.header);
      };
      if (method == "euler") {
        if (!n || !t) throw UsageError("euler needs --n and --t");
        if (!contain.empty() && zeros) throw UsageError("--zeros-prefix and --contain are exclusive");
        NecklaceConstraint c = NoConstraint{};
        if (zeros) c = ZerosPrefix{};
        if (!contain.empty()) c = ContainWord{parse_linear(contain, na)};
        res = euler_necklace(na, n, t, c);
        provenance("Euler tour of the astute graph G(a,n,t) is an (a,n,t)-perfect necklace");
      } else if (method == "lex") {
        if (!n) throw UsageError("lex needs --n");
        res = lex_necklace(na, n);
        provenance("A^n in lexicographic order is an (a,n,n)-perfect necklace");
      } else if (method == "stretch") {
        auto [w, h] = base();
        if (!h) throw UsageError("stretch needs a NECKLACE header on the base");
        res = stretch_necklace(Necklace(w, h->a, h->n, h->t), q);
        provenance("each letter repeated q times gives an (a,n,nq+r)-perfect necklace");
      } else if (method == "rotate") {
        res = rotate_expand_necklace(base().first, r);
        provenance("rotated De Bruijn blocks give an (a,n,n+r)-perfect necklace");
      } else {
        res = reflect_expand_necklace(base().first);
        provenance("a De Bruijn cycle and its reflection give an (a,n,2n-1)-perfect necklace");
      }
      out << res->header() << "\n" << format(res->word()) << "\n";
      return 0;
    }

    if (multiply->parsed()) {
      auto text = read_input(wo.file, in);
      for (const auto& s : text.words) {
        auto u = wo.parse_cycle(s);
        auto p = detail::require_upcycle(u, n);
        std::optional<Necklace> f;
        if (!filler_file.empty()) {
          auto ft = read_input(filler_file, in);
          if (!ft.header) throw UsageError("filler file needs a NECKLACE header");
          f.emplace(parse_cyclic(ft.words.front(), ft.header->a), ft.header->a, ft.header->n, ft.header->t);
        } else if (filler_kind == "lex") {
          f = lex_multiplier_filler(p, k);
        } else {
          f = default_multiplier_filler(p, k);
        }
        provenance("a*v + u^(k^(n-d)) is an upcycle for (ak)^n when v is a (k,n-d,t)-perfect necklace");
        out << format(alphabet_multiply({u, n, k, *f})) << "\n";
      }
      return 0;
    }

    if (liftc->parsed()) {
      auto text = read_input(wo.file, in);
      for (const auto& s : text.words) {
        auto u = wo.parse_cycle(s);
        if (enumerate) {
          auto res = enumerate_debruijn_lifts(u, n, max_results);
          provenance("every De Bruijn lift of a d=1 upcycle comes from a column-permutation filler");
          for (const auto& w : res.cycles) out << format(w) << "\n";
          if (!res.complete) out << "# incomplete: stopped at --max\n";
          continue;
        }
        if (!filler_file.empty()) {
          auto ft = read_input(filler_file, in);
          if (!ft.header) throw UsageError("necklace file needs a NECKLACE header");
          Necklace f(parse_cyclic(ft.words.front(), ft.header->a), ft.header->a, ft.header->n, ft.header->t);
          OffsetSet offs = offsets_text.empty() ? diamond_offsets(u, n) : offsets_from(offsets_text);
          provenance("replacing the selected diamonds of u^(a^delta) by a perfect necklace gives a lift");
          out << format(lift({u, n, offs, std::move(f)})) << "\n";
        } else {
          provenance("every upcycle lifts to a De Bruijn cycle");
          out << format(debruijn_lift(u, n)) << "\n";
        }
      }
      return 0;
    }

    if (fold->parsed()) {
      auto text = read_input(wo.file, in);
      for (const auto& s : text.words) {
        auto u = wo.parse_cycle(s);
        auto f = try_fold(u, n, delta, offsets_from(offsets_text));
        if (!f) {
          err << "no fold of " << format(u) << " with those offsets\n";
          code = 1;
          continue;
        }
        provenance("u is a fold of w when u^(a^delta) covers w");
        out << format(*f) << "\n";
      }
      return code;
    }

    if (graph->parsed()) {
      auto text = read_input(wo.file, in);
      auto u = wo.parse_cycle(text.words.front());
      if (factor) {
        provenance("the S(u) cycles of a d=1 upcycle form a perfect factor of B(a,n)");
        for (const auto& c : perfect_factor(u, n)) out << format(c) << "\n";
        return 0;
      }
      detail::require_upcycle(u, n);
      std::string dot = model == "s" ? export_dot(build_S(u, n)) : export_dot(build_T(u, n));
      if (out_path.empty()) {
        out << dot;
      } else {
        std::ofstream f(out_path);
        if (!f) throw UsageError("cannot write " + out_path);
        f << dot;
      }
      return 0;
    }

    if (dn->parsed()) {
      out << "n\tD(n)\n";
      for (std::size_t m = dn_min; m <= dn_max; ++m) out << m << "\t" << compute_D(m) << "\n";
      return 0;
    }

    if (feasible->parsed()) {
      if (fa || fd) {
        if (!fa || !fd || !n) throw UsageError("a verdict needs --a, --n and --d");
        auto v = feasibility(*fa, n, *fd);
        out << "a\tn\td\tstatus\trule\tcitation\twitness\n";
        if (v.reasons.empty()) out << *fa << "\t" << n << "\t" << *fd << "\t" << to_string(v.status) << "\t\t\t\n";
        for (const auto& reason : v.reasons) {
          out << *fa << "\t" << n << "\t" << *fd << "\t" << to_string(v.status) << "\t" << reason.rule << "\t"
              << reason.citation << "\t" << reason.witness << "\n";
        }
        return v.status == FeasibilityStatus::ruled_out ? 1 : 0;
      }
      if (n) lo = hi = n;
      out << "n\talphabet\td\trules\n";
      for (const auto& row : feasibility_table(lo, hi)) {
        std::string rules;
        for (const auto& rl : row.rules) rules += (rules.empty() ? "" : ",") + rl;
        out << row.n << "\t" << row.alphabet_class << "\t" << row.d_range() << "\t" << rules << "\n";
      }
      return 0;
    }

    if (search->parsed()) {
      if (!offsets_text.empty()) spec.diamond_offsets = offsets_from(offsets_text);
      if (!seed.empty()) spec.seed_prefix = parse_linear(seed, spec.a);
      spec.threads = thread_count(threads);
      auto res = search_upcycles(spec);
      if (res.ruled_out) {
        for (const auto& reason : res.ruled_out->reasons) {
          err << "ruled out: " << reason.rule << ": " << reason.citation << "\n";
        }
        return 1;
      }
      for (const auto& w : res.upcycles) out << format(w) << "\n";
      if (!res.complete) out << "# incomplete: stopped at the limit\n";
      return 0;
    }

    if (crossjoin->parsed()) {
      auto text = read_input(wo.file, in);
      const auto& s = text.words.front();
      if (candidates) {
        auto u = wo.parse_cycle(s);
        out << "x\ty\tix\tiy\tjx\tjy\n";
        for (const auto& c : cross_join_candidates(u, n)) {
          out << format(c.x) << "\t" << format(c.y) << "\t" << c.sites.ix << "\t" << c.sites.iy << "\t"
              << c.sites.jx << "\t" << c.sites.jy << "\n";
        }
        return 0;
      }
      auto sites = parse_list(at);
      if (xs.empty() || ys.empty() || sites.size() != 4) throw UsageError("crossjoin needs --x, --y and --at ix,iy,jx,jy");
      auto w = wo.parse(s);
      const auto al = wo.alphabet_for(s);
      auto x = parse_linear(xs, al), y = parse_linear(ys, al);
      CrossJoinSites cs{sites[0], sites[1], sites[2], sites[3]};
      provenance("swapping blocks between repeated x and y keeps the set of windows");
      std::visit([&](const auto& word) { out << format(cross_join(word, n, x, y, cs)) << "\n"; }, w);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace upcycle::cli
