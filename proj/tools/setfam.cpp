// Command-line workbench: constructions, constraint checks, extremal
// search, chain sampling, Monte-Carlo bound estimates, and ratio reports.
// Every run is reproducible byte-for-byte from its flags and seed.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "setfam/chains.hpp"
#include "setfam/check.hpp"
#include "setfam/constructions.hpp"
#include "setfam/dsl.hpp"
#include "setfam/errors.hpp"
#include "setfam/kernels/kernels.hpp"
#include "setfam/lym.hpp"
#include "setfam/search.hpp"
#include "setfam/serialize.hpp"

namespace {

using namespace setfam;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

int exit_code_for(Err code) {
  switch (code) {
    case Err::IoError:
    case Err::Internal:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

// Relative --out paths land under $SETFAM_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("SETFAM_OUT_DIR");
  if (!dir || !*dir) return path;
  std::string full = dir;
  if (full.back() != '/') full += '/';
  return full + path;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  write_text_file(resolve_out(out), text);
}

std::string violation_line(const Violation& v) {
  return "violation: " + format_set(v.a) + " vs " + format_set(v.b) + " [" +
         rule_text(v.rule) + "]\n";
}

struct ConstructArgs {
  std::string kind;
  int n = 0;
  int k = 1;
  std::uint32_t p = 0;
  std::uint32_t q = 1;
  std::string spec;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> residues;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  ResidueChoice choice = a.residues.empty() ? ResidueChoice::best_choice()
                                            : ResidueChoice::fixed(a.residues);
  Family family;
  if (a.kind == "a-star") {
    ResidueFamily rf = a_star(a.n, choice);
    std::fprintf(stderr, "residues: r=%u\n", rf.residues.at(0));
    family = std::move(rf.family);
  } else if (a.kind == "a-star-k") {
    ResidueFamily rf = a_star_k(a.n, a.k, choice);
    std::string shown;
    for (std::size_t i = 0; i < rf.residues.size(); ++i) {
      if (i) shown += ',';
      shown += std::to_string(rf.residues[i]);
    }
    std::fprintf(stderr, "residues: r=%s\n", shown.c_str());
    family = std::move(rf.family);
  } else if (a.kind == "middle-layers") {
    family = middle_layers(a.n, a.p, a.q);
  } else if (a.kind == "greedy") {
    if (a.spec.empty())
      fail(Err::ParseError, "construct --kind greedy needs --spec");
    family = greedy_valid_family(a.n, parse_rules(a.spec), a.seed);
  } else {
    fail(Err::ParseError, "unknown construction kind \"" + a.kind + "\"");
  }
  emit(family_to_json(family), a.out);
  return kExitOk;
}

struct CheckArgs {
  std::string family_path;
  std::string spec;
  bool all = false;
  int threads = 1;
};

int run_check(const CheckArgs& a) {
  const Family family = load_family_file(a.family_path);
  const RuleSet rules = parse_rules(a.spec);
  CheckOptions options;
  options.mode = a.all ? CheckMode::AllViolations : CheckMode::FirstViolation;
  options.threads = a.threads;
  const CheckResult result = check_family(family, rules, options);
  if (result.ok) {
    std::fputs("ok\n", stdout);
    return kExitOk;
  }
  for (const Violation& v : result.violations)
    std::fputs(violation_line(v).c_str(), stdout);
  return kExitViolation;
}

struct SearchArgs {
  int n = 0;
  std::string spec;
  std::string method = "bb";
  std::optional<int> layer;
  std::string layers;
  std::uint64_t budget = 1'000'000;
  std::string warm_start_path;
  std::string out;
};

std::optional<LayerRange> parse_layers(const SearchArgs& a) {
  if (a.layer) return LayerRange{*a.layer, *a.layer};
  if (a.layers.empty()) return std::nullopt;
  const std::size_t colon = a.layers.find(':');
  if (colon == std::string::npos)
    fail(Err::ParseError, "--layers wants lo:hi");
  try {
    const int lo = std::stoi(a.layers.substr(0, colon));
    const int hi = std::stoi(a.layers.substr(colon + 1));
    return LayerRange{lo, hi};
  } catch (const std::exception&) {
    fail(Err::ParseError, "--layers wants lo:hi with integer endpoints");
  }
}

int run_search(const SearchArgs& a) {
  const RuleSet rules = parse_rules(a.spec);
  const std::optional<LayerRange> layers = parse_layers(a);
  SearchResult result;
  if (a.method == "exhaustive") {
    if (layers)
      fail(Err::ParseError, "--method exhaustive searches the full lattice");
    result = max_family_exhaustive(a.n, rules);
  } else if (a.method == "bb") {
    SearchOptions options;
    options.node_budget = a.budget;
    Family warm;
    if (!a.warm_start_path.empty()) {
      warm = load_family_file(a.warm_start_path);
      options.warm_start = &warm;
    }
    result = max_family(a.n, rules, layers, options);
  } else {
    fail(Err::ParseError, "unknown method \"" + a.method + "\"");
  }
  emit(search_result_to_json(result), a.out);
  return kExitOk;
}

struct SampleChainsArgs {
  int n = 0;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  std::string family_path;
  std::string out;
};

int run_sample_chains(const SampleChainsArgs& a) {
  const ChainSplit split = default_split(a.n);
  std::optional<Family> family;
  std::optional<FamilyIndex> index;
  if (!a.family_path.empty()) {
    family = load_family_file(a.family_path);
    if (family->n != a.n)
      fail(Err::PreconditionViolated, "--family universe differs from --n");
    index.emplace(*family);
  }
  std::string text;
  for (std::uint64_t idx = 0; idx < a.samples; ++idx) {
    const PermSample sigma = sample_permutation(a.n, a.seed, idx);
    const std::vector<ChainSet> chains = chains_k1(sigma, split);
    text += "{\"index\":" + std::to_string(idx) +
            ",\"seed\":" + std::to_string(a.seed) + ",\"split\":{\"n\":" +
            std::to_string(split.n) + ",\"m\":" + std::to_string(split.m) +
            "},\"sigma\":[";
    for (std::size_t i = 0; i < sigma.sigma.size(); ++i) {
      if (i) text += ',';
      text += std::to_string(sigma.sigma[i]);
    }
    text += "],\"chains\":[";
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (c) text += ',';
      text += "{\"i\":" + std::to_string(chains[c].i) +
              ",\"j\":" + std::to_string(chains[c].j) +
              ",\"mask\":" + std::to_string(chains[c].mask) + "}";
    }
    text += "]";
    if (index) {
      const IncidenceStats stats = incidence_k1(*index, sigma, split);
      text += ",\"sum_x\":" + std::to_string(stats.sum_x);
      if (stats.first_hit)
        text += ",\"first_hit\":[" + std::to_string(stats.first_hit->first) +
                "," + std::to_string(stats.first_hit->second) + "]";
      else
        text += ",\"first_hit\":null";
    }
    text += "}\n";
  }
  emit(text, a.out);
  return kExitOk;
}

struct EstimateArgs {
  std::string family_path;
  std::optional<int> band_floor;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

int run_estimate(const EstimateArgs& a) {
  const Family family = load_family_file(a.family_path);
  const RuleSet rule{forbidden_difference(1)};
  const CheckResult check = check_family(family, rule, {});
  if (!check.ok) {
    for (const Violation& v : check.violations)
      std::fputs(violation_line(v).c_str(), stdout);
    return kExitViolation;
  }
  const ChainSplit split = default_split(family.n);
  const int floor =
      a.band_floor ? *a.band_floor : std::max(2, default_band_floor(family.n));
  const BoundEstimate est =
      estimate_k1(family, split, floor, a.samples, a.seed, a.threads);
  emit(bound_estimate_to_json(est), a.out);
  return kExitOk;
}

struct BlockEstimateArgs {
  std::string family_path;
  int k = 1;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

int run_block_estimate(const BlockEstimateArgs& a) {
  const Family family = load_family_file(a.family_path);
  const RuleSet rule{forbidden_difference(a.k)};
  const CheckResult check = check_family(family, rule, {});
  if (!check.ok) {
    for (const Violation& v : check.violations)
      std::fputs(violation_line(v).c_str(), stdout);
    return kExitViolation;
  }
  const BoundEstimate est =
      block_hit_estimate(family, a.k, a.samples, a.seed, a.threads);
  emit(block_estimate_to_json(est, a.k, block_ceiling(family.n, a.k)), a.out);
  return kExitOk;
}

struct ReportArgs {
  std::string table = "ratios";
  int n_max = 12;
  std::uint64_t budget = 20'000;
  std::string format = "csv";
  std::string out;
};

int run_report(const ReportArgs& a) {
  if (a.table != "ratios")
    fail(Err::ParseError, "unknown table \"" + a.table + "\"");
  if (a.n_max < 2 || a.n_max > 20)
    fail(Err::ParseError, "--n-max must lie in 2..20");

  std::vector<ReportRow> rows;
  for (int n = 2; n <= a.n_max; ++n) {
    const std::uint64_t central = binomial(n, n / 2);
    const ResidueFamily rf = a_star(n);

    ReportRow star;
    star.n = n;
    star.spec = "diff:1";
    star.label = "a-star";
    star.size = rf.family.size();
    star.central_binomial = central;
    star.normalized_ratio =
        static_cast<double>(star.size) * n / static_cast<double>(central);
    star.extra = "r=" + std::to_string(rf.residues.at(0));
    rows.push_back(star);

    SearchOptions options;
    options.node_budget = a.budget;
    options.warm_start = &rf.family;
    const SearchResult found =
        max_family(n, forbidden_difference(1), std::nullopt, options);

    ReportRow search;
    search.n = n;
    search.spec = "diff:1";
    search.label = "search";
    search.size = found.optimum;
    search.central_binomial = central;
    search.normalized_ratio =
        static_cast<double>(search.size) * n / static_cast<double>(central);
    search.extra = std::string("proven=") + (found.proven_optimal ? "1" : "0") +
                   ";nodes=" + std::to_string(found.nodes_explored);
    rows.push_back(search);
  }

  if (a.format == "csv")
    emit(report_to_csv(rows), a.out);
  else if (a.format == "json")
    emit(report_to_json(rows), a.out);
  else
    fail(Err::ParseError, "unknown format \"" + a.format + "\"");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-family workbench: constructions, checks, chain "
               "estimates, and extremal search"};
  app.require_subcommand(1);

  std::string kernel = "auto";
  app.add_option("--kernel", kernel, "compute kernels: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  ConstructArgs construct;
  CLI::App* c = app.add_subcommand("construct", "build a family");
  c->add_option("--kind", construct.kind,
                "a-star, a-star-k, middle-layers, greedy")
      ->required();
  c->add_option("--n", construct.n, "universe size")->required();
  c->add_option("--k", construct.k, "power-sum depth (a-star-k)");
  c->add_option("--p", construct.p, "ratio numerator (middle-layers)");
  c->add_option("--q", construct.q, "ratio denominator (middle-layers)");
  c->add_option("--spec", construct.spec, "rules for greedy");
  c->add_option("--seed", construct.seed, "greedy scan order seed");
  c->add_option("--residues", construct.residues,
                "fixed residue vector (default: best)")
      ->delimiter(',');
  c->add_option("--out", construct.out, "output path (default stdout)");

  CheckArgs check;
  CLI::App* k = app.add_subcommand("check", "test a family against rules");
  k->add_option("family", check.family_path, "family JSON file")->required();
  k->add_option("--spec", check.spec, "rules to test")->required();
  k->add_flag("--all", check.all, "list every violating pair");
  k->add_option("--threads", check.threads, "worker threads");

  SearchArgs search;
  CLI::App* s = app.add_subcommand("search", "maximum valid family");
  s->add_option("--n", search.n, "universe size")->required();
  s->add_option("--spec", search.spec, "rules")->required();
  s->add_option("--method", search.method, "bb or exhaustive")
      ->check(CLI::IsMember({"bb", "exhaustive"}));
  s->add_option("--layer", search.layer, "restrict to one size layer");
  s->add_option("--layers", search.layers, "restrict to sizes lo:hi");
  s->add_option("--budget", search.budget, "branch-and-bound node budget");
  s->add_option("--warm-start", search.warm_start_path,
                "family JSON used as the starting incumbent");
  s->add_option("--out", search.out, "output path (default stdout)");

  SampleChainsArgs chains;
  CLI::App* sc = app.add_subcommand("sample-chains",
                                    "draw permutations and their chains");
  sc->add_option("--n", chains.n, "universe size")->required();
  sc->add_option("--samples", chains.samples, "number of permutations");
  sc->add_option("--seed", chains.seed, "stream seed");
  sc->add_option("--family", chains.family_path,
                 "family JSON for incidence stats");
  sc->add_option("--out", chains.out, "output path (default stdout)");

  EstimateArgs estimate;
  CLI::App* e = app.add_subcommand("estimate",
                                   "Monte-Carlo chain incidence bounds");
  e->add_option("family", estimate.family_path, "family JSON file")
      ->required();
  e->add_option("--band-floor", estimate.band_floor,
                "smallest size admitted (default: band floor)");
  e->add_option("--samples", estimate.samples, "permutations to draw");
  e->add_option("--seed", estimate.seed, "stream seed");
  e->add_option("--threads", estimate.threads, "worker threads");
  e->add_option("--out", estimate.out, "output path (default stdout)");

  BlockEstimateArgs block;
  CLI::App* b = app.add_subcommand("block-estimate",
                                   "Monte-Carlo block-chain hit density");
  b->add_option("family", block.family_path, "family JSON file")->required();
  b->add_option("--k", block.k, "difference parameter")->required();
  b->add_option("--samples", block.samples, "(sigma, S) pairs to draw");
  b->add_option("--seed", block.seed, "stream seed");
  b->add_option("--threads", block.threads, "worker threads");
  b->add_option("--out", block.out, "output path (default stdout)");

  ReportArgs report;
  CLI::App* r = app.add_subcommand("report", "emit comparison tables");
  r->add_option("--table", report.table, "table name (ratios)");
  r->add_option("--n-max", report.n_max, "largest universe size");
  r->add_option("--budget", report.budget, "search node budget per n");
  r->add_option("--format", report.format, "csv or json");
  r->add_option("--out", report.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    set_active_kernels(kernel.c_str());
    if (c->parsed()) return run_construct(construct);
    if (k->parsed()) return run_check(check);
    if (s->parsed()) return run_search(search);
    if (sc->parsed()) return run_sample_chains(chains);
    if (e->parsed()) return run_estimate(estimate);
    if (b->parsed()) return run_block_estimate(block);
    if (r->parsed()) return run_report(report);
    std::fputs("error: no subcommand\n", stderr);
    return kExitUsage;
  } catch (const Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInternal;
  }
}
