#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cadyn/cli.hpp"
#include "cadyn/formats.hpp"
#include "cadyn/oriented.hpp"
#include "cadyn/reduction.hpp"
#include "cadyn/render.hpp"
#include "cadyn/reversible.hpp"
#include "cadyn/trace.hpp"
#include "cadyn/window.hpp"

namespace cadyn::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::uint64_t budget = Budget::kDefault;
  std::uint64_t seed = 20240607;
  bool json = false;
  bool serial = false;
  std::string out;

  std::string rule, init, boundary, render, format, kind = "trace", method = "auto";
  std::string h, phi, f, g, orientation, layer, variant = "shift", branching = "all", dump;
  std::string out_f, out_g, out_phi, out_layer, inverse_out, expect_flag, experiment;
  int random_width = 0, steps = 1, n = 1, t = 1, radius = 1, k = 1, m = -1, entropy_t = 0;
  int verify = -1;
  int q = 0, state = -1;
  std::optional<double> expect;
  double tol = 0.02;
  bool contained = false, exhaustive = false, inverse = false, check_conjugacy = false, literal = false;
};

struct Parsed {
  std::unique_ptr<CLI::App> app;
  std::unique_ptr<Options> options = std::make_unique<Options>();
  std::string command;
  const Options& opt() const { return *options; }
};

fs::path resolve_in(const Context& ctx, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : ctx.input_dir / path;
}

fs::path resolve_out(const Context& ctx, const std::string& p) {
  const fs::path path(p);
  const fs::path full = path.is_absolute() ? path : ctx.output_dir / path;
  if (full.has_parent_path()) fs::create_directories(full.parent_path());
  return full;
}

RuleTable load_rule(const Context& ctx, const std::string& p) {
  if (p.empty()) throw Error("missing rule file");
  return parse_rule_or_family(read_file(resolve_in(ctx, p).string()));
}

Orientation load_orientation(const Context& ctx, const std::string& p) {
  if (p.empty()) throw Error("missing orientation file");
  return parse_orientation(read_file(resolve_in(ctx, p).string()));
}

PathLayerConfig load_layer(const Context& ctx, const std::string& p) {
  if (p.empty()) throw Error("missing layer file");
  return parse_path_layer(read_file(resolve_in(ctx, p).string()));
}

Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "absent") return Boundary::Absent;
  throw Error("boundary must be periodic or absent");
}

Enumeration parse_method(const std::string& s) {
  if (s == "auto") return Enumeration::Auto;
  if (s == "brute") return Enumeration::BruteForce;
  if (s == "sweep") return Enumeration::Sweep;
  throw Error("method must be auto, brute or sweep");
}

std::optional<bool> parse_expect_flag(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "yes") return true;
  if (s == "no") return false;
  throw Error("--expect must be yes or no");
}

PathVariant parse_variant(const std::string& s) {
  if (s == "shift") return PathVariant::Shift;
  if (s == "mobius") return PathVariant::Mobius;
  if (s == "zeta" || s == "zot") return PathVariant::Zeta;
  throw Error("variant must be shift, mobius or zeta");
}

PathOptions path_options(const Options& o) {
  PathOptions p;
  p.boundary = o.boundary.empty() ? Boundary::Absent : parse_boundary(o.boundary);
  if (o.branching == "valid") {
    p.branching = BranchRule::ValidCellsOnly;
  } else if (o.branching != "all") {
    throw Error("branching must be all or valid");
  }
  p.require_contained = o.contained;
  return p;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string perms_string(const PermutationFamily& fam) {
  std::vector<std::string> parts;
  for (const auto& p : fam.perms) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i > 0 && fam.alphabet_size > 10 ? "," : "") + std::to_string(p[i]);
    parts.push_back(s);
  }
  return join(parts, '/');
}

std::string cells_string(const std::vector<Cell>& path) {
  std::vector<std::string> parts;
  for (const Cell& c : path) parts.push_back("(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")");
  return join(parts, '-');
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_flag("--serial", o.serial, "Use the serial reference kernels");
}

Parsed build() {
  Parsed p;
  p.app = std::make_unique<CLI::App>("Cellular automaton dynamics toolkit", "cadyn");
  CLI::App& app = *p.app;
  Options& o = *p.options;
  app.require_subcommand(1);
  app.add_option("--budget", o.budget, "Enumeration budget (number of words/cells)");
  app.add_option("--seed", o.seed, "Seed for randomized inputs");
  app.add_flag("--json", o.json, "Emit JSON instead of key=value lines");
  app.add_option("--out", o.out, "Directory for written artifacts");

  auto* sim = app.add_subcommand("sim", "Simulate a 1D rule on a finite window");
  sim->add_option("--rule", o.rule)->required();
  sim->add_option("--init", o.init, "Initial word as digits ('.' undetermined)");
  sim->add_option("--random", o.random_width, "Random initial word of this width");
  sim->add_option("--steps", o.steps);
  sim->add_option("--boundary", o.boundary);
  sim->add_option("--render", o.render, "Write the space-time diagram to this file");
  sim->add_option("--format", o.format, "text or pgm (default from extension)");

  auto* trace = app.add_subcommand("trace", "Enumerate space-time blocks or trace words");
  trace->add_option("--rule", o.rule)->required();
  trace->add_option("--n", o.n);
  trace->add_option("--t", o.t)->required();
  trace->add_option("--kind", o.kind, "trace or spacetime");
  trace->add_option("--method", o.method, "auto, brute or sweep");
  trace->add_option("--dump", o.dump, "Write the pattern set to this file");
  add_common(trace, o);

  auto* entropy = app.add_subcommand("entropy", "Two-step entropy estimate from trace counts");
  entropy->add_option("--rule", o.rule)->required();
  entropy->add_option("--n", o.n);
  entropy->add_option("--t", o.t)->required();
  entropy->add_option("--method", o.method);
  entropy->add_option("--expect", o.expect);
  entropy->add_option("--tol", o.tol);
  add_common(entropy, o);

  auto* rev = app.add_subcommand("check-reversible", "Search for an inverse rule");
  rev->add_option("--rule", o.rule)->required();
  rev->add_option("--radius", o.radius);
  rev->add_option("--inverse-out", o.inverse_out);
  rev->add_option("--expect", o.expect_flag, "yes or no");
  add_common(rev, o);

  auto* nil = app.add_subcommand("nilpotent-within", "Check F^n is constant q");
  nil->add_option("--rule", o.rule)->required();
  nil->add_option("--n", o.n)->required();
  nil->add_option("--q", o.q)->required();
  nil->add_option("--expect", o.expect_flag, "yes or no");
  add_common(nil, o);

  auto* spread = app.add_subcommand("spreading", "List spreading states; optional avoiding-window search");
  spread->add_option("--rule", o.rule)->required();
  spread->add_option("--state", o.state);
  spread->add_option("--m", o.m);
  spread->add_option("--expect", o.expect_flag, "yes or no (avoiding window exists)");
  add_common(spread, o);

  auto* reduce = app.add_subcommand("reduce", "Build F, G and phi from H");
  reduce->set_help_flag("--help", "Print this help message and exit");
  reduce->add_option("--h", o.h)->required();
  reduce->add_option("--q", o.q)->required();
  reduce->add_option("--k", o.k);
  reduce->add_option("--n", o.n);
  reduce->add_option("--out-f", o.out_f);
  reduce->add_option("--out-g", o.out_g);
  reduce->add_option("--out-phi", o.out_phi);
  reduce->add_option("--verify", o.verify, "Verify phi with inverse radius up to this bound");
  reduce->add_option("--entropy-t", o.entropy_t, "Estimate the entropy of F and G at this t");
  reduce->add_option("--expect-gap", o.expect, "Require entropy(F) - entropy(G) >= this");
  add_common(reduce, o);

  auto* witness = app.add_subcommand("verify-witness", "Check phi∘F = G∘phi and invert phi");
  witness->add_option("--phi", o.phi)->required();
  witness->add_option("--f", o.f)->required();
  witness->add_option("--g", o.g)->required();
  witness->add_option("--radius", o.radius);
  add_common(witness, o);

  auto* sft = app.add_subcommand("graph-sft", "Forbidden blocks of the graph subshift");
  sft->add_option("--rule", o.rule)->required();
  sft->add_option("--dump", o.dump);

  auto* paths = app.add_subcommand("paths", "Classify cells and extract valid paths");
  paths->add_option("--orientation", o.orientation)->required();
  paths->add_option("--layer", o.layer)->required();
  paths->add_option("--boundary", o.boundary);
  paths->add_option("--branching", o.branching, "all or valid");
  paths->add_flag("--contained", o.contained);

  auto* pca = app.add_subcommand("path-ca", "Run a path automaton on a layer file");
  pca->add_option("--orientation", o.orientation)->required();
  pca->add_option("--layer", o.layer)->required();
  pca->add_option("--variant", o.variant, "shift, mobius or zeta");
  pca->add_option("--steps", o.steps);
  pca->add_option("--out-layer", o.out_layer);
  pca->add_option("--boundary", o.boundary);
  pca->add_option("--branching", o.branching);
  pca->add_flag("--exhaustive", o.exhaustive, "Check bijectivity over all B-layers");

  auto* hphi = app.add_subcommand("hphi", "Apply the path conjugacy");
  hphi->add_option("--orientation", o.orientation)->required();
  hphi->add_option("--layer", o.layer)->required();
  hphi->add_flag("--inverse", o.inverse);
  hphi->add_flag("--literal", o.literal, "Write x/y back at component i-1 instead of k-i");
  hphi->add_option("--out-layer", o.out_layer);
  hphi->add_option("--boundary", o.boundary);
  hphi->add_option("--branching", o.branching);
  hphi->add_flag("--check-conjugacy", o.check_conjugacy,
                 "Check hphi∘F_shift = F_mobius²∘hphi over all B-layers");

  auto* run = app.add_subcommand("run", "Run an experiment file");
  run->add_option("file", o.experiment)->required();

  return p;
}

void parse(Parsed& p, const std::vector<std::string>& args) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  p.app->parse(reversed);
  for (auto* sub : p.app->get_subcommands()) p.command = sub->get_name();
}

Context apply_globals(const Options& o, Context ctx) {
  ctx.budget = o.budget;
  ctx.seed = o.seed;
  ctx.json = ctx.json || o.json;
  ctx.serial = ctx.serial || o.serial;
  if (!o.out.empty()) ctx.output_dir = fs::path(o.out).is_absolute() ? fs::path(o.out) : ctx.output_dir / o.out;
  return ctx;
}

Report cmd_sim(const Options& o, const Context& ctx) {
  const RuleTable rule = load_rule(ctx, o.rule);
  if (rule.dimension() != 1) throw MismatchError("sim: only 1D rules");
  WindowConfig cfg;
  if (o.random_width > 0) {
    std::mt19937_64 rng(ctx.seed);
    std::uniform_int_distribution<int> dist(0, static_cast<int>(rule.alphabet_size()) - 1);
    cfg.width = o.random_width;
    cfg.boundary = parse_boundary(o.boundary.empty() ? "periodic" : o.boundary);
    for (int i = 0; i < o.random_width; ++i) cfg.cells.push_back(static_cast<State>(dist(rng)));
  } else {
    if (o.init.empty()) throw Error("sim: need --init or --random");
    cfg = WindowConfig::from_digits(o.init, parse_boundary(o.boundary.empty() ? "periodic" : o.boundary));
  }
  for (State s : cfg.cells)
    if (s != kUndetermined && s >= rule.alphabet_size()) throw Error("sim: initial state outside alphabet");
  const SpaceTimeDiagram d = iterate(rule, cfg, o.steps);
  Report r("sim");
  r.add("steps", o.steps).add("width", cfg.width);
  r.add("boundary", cfg.boundary == Boundary::Periodic ? "periodic" : "absent");
  r.add("final", d.rows.back().to_string());
  r.add("determined", static_cast<std::uint64_t>(d.rows.back().determined_count()));
  if (!o.render.empty()) {
    const bool pgm = o.format.empty() ? fs::path(o.render).extension() == ".pgm" : o.format == "pgm";
    if (!o.format.empty() && o.format != "pgm" && o.format != "text")
      throw Error("sim: format must be text or pgm");
    write_file(resolve_out(ctx, o.render).string(),
               render_spacetime(d, pgm ? RenderFormat::Pgm : RenderFormat::Text));
    r.add("render", o.render);
  }
  return r;
}

EnumerationOptions enum_options(const Options& o, const Context& ctx) {
  EnumerationOptions e;
  e.budget.limit = ctx.budget;
  e.exec = ctx.serial ? Exec::Serial : Exec::Parallel;
  e.method = parse_method(o.method);
  return e;
}

Report cmd_trace(const Options& o, const Context& ctx) {
  const RuleTable rule = load_rule(ctx, o.rule);
  TraceSet set;
  if (o.kind == "trace") {
    set = trace_words(rule, o.n, o.t, enum_options(o, ctx));
  } else if (o.kind == "spacetime") {
    set = spacetime_patterns(rule, o.n, o.t, enum_options(o, ctx));
  } else {
    throw Error("trace: kind must be trace or spacetime");
  }
  Report r("trace");
  r.add("kind", o.kind).add("n", o.n).add("t", o.t).add("count", static_cast<std::uint64_t>(set.count()));
  if (!o.dump.empty()) {
    write_file(resolve_out(ctx, o.dump).string(), serialize(set));
    r.add("dump", o.dump);
  }
  return r;
}

Report cmd_entropy(const Options& o, const Context& ctx) {
  const RuleTable rule = load_rule(ctx, o.rule);
  const EntropyEstimate e = entropy_estimate(rule, o.n, o.t, enum_options(o, ctx));
  Report r("entropy");
  r.add("n", o.n).add("t", o.t).add("p_t", e.p_t).add("p_t_minus_2", e.p_t_minus_2);
  r.add("estimate", e.difference).add("raw", e.raw);
  if (o.expect) {
    r.add("expect", *o.expect).add("tol", o.tol);
    r.check("within_tol", std::abs(e.difference - *o.expect) <= o.tol);
  }
  return r;
}

Report cmd_reversible(const Options& o, const Context& ctx) {
  const RuleTable rule = load_rule(ctx, o.rule);
  const auto inverse = invert_up_to_radius(rule, o.radius, Budget{ctx.budget},
                                           ctx.serial ? Exec::Serial : Exec::Parallel);
  Report r("check-reversible");
  r.add("max_radius", o.radius).add("reversible", inverse.has_value());
  if (inverse) {
    r.add("inverse_radius", inverse->radius());
    if (const auto fam = rule_to_family(*inverse)) r.add("inverse_perms", perms_string(*fam));
    if (!o.inverse_out.empty()) {
      write_file(resolve_out(ctx, o.inverse_out).string(), serialize(*inverse));
      r.add("inverse_out", o.inverse_out);
    }
  }
  if (const auto want = parse_expect_flag(o.expect_flag)) r.check("expected", inverse.has_value() == *want);
  return r;
}

Report cmd_nilpotent(const Options& o, const Context& ctx) {
  const RuleTable rule = load_rule(ctx, o.rule);
  if (o.q < 0 || static_cast<std::uint32_t>(o.q) >= rule.alphabet_size()) throw Error("q outside alphabet");
  const bool nil = is_nilpotent_within(rule, o.n, static_cast<State>(o.q), Budget{ctx.budget},
                                       ctx.serial ? Exec::Serial : Exec::Parallel);
  Report r("nilpotent-within");
  r.add("n", o.n).add("q", o.q).add("nilpotent", nil);
  if (const auto want = parse_expect_flag(o.expect_flag)) r.check("expected", nil == *want);
  return r;
}

Report cmd_spreading(const Options& o, const Context& ctx) {
  const RuleTable rule = load_rule(ctx, o.rule);
  std::vector<std::string> states;
  for (State s : find_spreading_states(rule)) states.push_back(std::to_string(s));
  Report r("spreading");
  r.add("spreading", states.empty() ? std::string("none") : join(states, ','));
  if (o.state >= 0 && o.m >= 0) {
    const bool avoid = avoiding_window_exists(rule, static_cast<State>(o.state), o.m, enum_options(o, ctx));
    r.add("state", o.state).add("m", o.m).add("avoiding_window", avoid);
    if (const auto want = parse_expect_flag(o.expect_flag)) r.check("expected", avoid == *want);
  }
  return r;
}

Report cmd_reduce(const Options& o, const Context& ctx) {
  ReductionSpec spec{load_rule(ctx, o.h), static_cast<State>(o.q), o.k, o.n};
  if (o.q < 0) throw Error("reduce: q must be non-negative");
  const auto warnings = validate(spec);
  for (const auto& w : warnings)
    if (ctx.diagnostics) *ctx.diagnostics << "warning: " << w << '\n';
  const Budget budget{ctx.budget};
  const Exec exec = ctx.serial ? Exec::Serial : Exec::Parallel;
  const RuleTable f = build_F(spec);
  const RuleTable g = build_G(spec);
  Report r("reduce");
  r.add("k", o.k).add("n", o.n).add("q", o.q);
  r.add("a_size", static_cast<std::uint64_t>(f.alphabet_size() / spec.h.alphabet_size()));
  r.add("b_size", static_cast<std::uint64_t>(spec.h.alphabet_size()));
  r.add("warnings", static_cast<std::uint64_t>(warnings.size()));
  if (!o.out_f.empty()) write_file(resolve_out(ctx, o.out_f).string(), serialize(f));
  if (!o.out_g.empty()) write_file(resolve_out(ctx, o.out_g).string(), serialize(g));
  if (!o.out_phi.empty() || o.verify >= 0) {
    const RuleTable phi = build_phi(spec, budget, exec);
    if (!o.out_phi.empty()) write_file(resolve_out(ctx, o.out_phi).string(), serialize(phi));
    if (o.verify >= 0) {
      const WitnessReport w = verify_witness(phi, f, g, o.verify, budget, exec);
      r.check("homomorphism", w.homomorphism).check("invertible", w.invertible);
      if (w.inverse_radius) r.add("inverse_radius", *w.inverse_radius);
      if (!w.note.empty()) r.add("note", w.note);
    }
  }
  if (o.entropy_t > 0) {
    EnumerationOptions e = enum_options(o, ctx);
    const EntropyEstimate ef = entropy_estimate(f, 1, o.entropy_t, e);
    const EntropyEstimate eg = entropy_estimate(g, 1, o.entropy_t, e);
    r.add("t", o.entropy_t).add("entropy_f", ef.difference).add("entropy_g", eg.difference);
    r.add("gap", ef.difference - eg.difference);
    if (o.expect) r.check("gap_at_least", ef.difference - eg.difference >= *o.expect - 1e-12);
  }
  return r;
}

Report cmd_witness(const Options& o, const Context& ctx) {
  const RuleTable phi = load_rule(ctx, o.phi);
  const RuleTable f = load_rule(ctx, o.f);
  const RuleTable g = load_rule(ctx, o.g);
  const WitnessReport w = verify_witness(phi, f, g, o.radius, Budget{ctx.budget},
                                         ctx.serial ? Exec::Serial : Exec::Parallel);
  Report r("verify-witness");
  r.add("max_radius", o.radius);
  r.check("homomorphism", w.homomorphism).check("invertible", w.invertible);
  if (w.inverse_radius) r.add("inverse_radius", *w.inverse_radius);
  if (!w.note.empty()) r.add("note", w.note);
  return r;
}

Report cmd_graph_sft(const Options& o, const Context& ctx) {
  const RuleTable rule = load_rule(ctx, o.rule);
  const GraphSubshift sft = graph_subshift(rule, Budget{ctx.budget});
  Report r("graph-sft");
  r.add("pair_alphabet", static_cast<std::uint64_t>(sft.base_alphabet) * sft.base_alphabet);
  r.add("width", sft.width).add("anchor", sft.anchor);
  r.add("forbidden", static_cast<std::uint64_t>(sft.forbidden_count()));
  if (!o.dump.empty()) {
    std::ostringstream out;
    out << "forbidden width=" << sft.width << " anchor=" << sft.anchor << " count=" << sft.forbidden_count()
        << '\n';
    const auto w = static_cast<std::size_t>(sft.width);
    for (std::size_t i = 0; i < sft.forbidden_count(); ++i) {
      for (std::size_t j = 0; j < w; ++j) out << (j > 0 ? " " : "") << sft.forbidden[i * w + j];
      out << '\n';
    }
    write_file(resolve_out(ctx, o.dump).string(), out.str());
    r.add("dump", o.dump);
  }
  return r;
}

Report cmd_paths(const Options& o, const Context& ctx) {
  const Orientation orient = load_orientation(ctx, o.orientation);
  const PathLayerConfig layer = load_layer(ctx, o.layer);
  const PathOptions popts = path_options(o);
  const PathDecomposition d = extract_paths(orient, layer.a_layer, popts);
  std::size_t counts[5] = {0, 0, 0, 0, 0};
  for (CellRole role : d.roles) ++counts[static_cast<int>(role)];
  Report r("paths");
  r.add("width", d.width).add("height", d.height);
  r.add("invalid", static_cast<std::uint64_t>(counts[0])).add("begin", static_cast<std::uint64_t>(counts[1]));
  r.add("middle", static_cast<std::uint64_t>(counts[2])).add("end", static_cast<std::uint64_t>(counts[3]));
  r.add("begin_and_end", static_cast<std::uint64_t>(counts[4]));
  r.add("paths", static_cast<std::uint64_t>(d.paths.size()));
  std::vector<std::string> lengths;
  for (const auto& p : d.paths) lengths.push_back(std::to_string(p.size()));
  r.add("lengths", lengths.empty() ? std::string("none") : join(lengths, ','));
  r.add("cycles", static_cast<std::uint64_t>(d.cycles.size()));
  r.add("acyclic", d.acyclic);
  if (!d.cycles.empty()) r.add("cycle", cells_string(d.cycles.front()));
  return r;
}

Report cmd_path_ca(const Options& o, const Context& ctx) {
  const Orientation orient = load_orientation(ctx, o.orientation);
  const PathLayerConfig start = load_layer(ctx, o.layer);
  const PathVariant variant = parse_variant(o.variant);
  const PathOptions popts = path_options(o);
  start.validate(orient);
  Report r("path-ca");
  r.add("variant", o.variant).add("steps", o.steps);
  PathLayerConfig cur = start;
  std::optional<int> returned;
  for (int i = 1; i <= o.steps; ++i) {
    cur = apply_path_ca(orient, cur, variant, popts);
    if (!returned && cur == start) returned = i;
  }
  r.add("returned_at", returned ? std::to_string(*returned) : std::string("none"));
  // orbit of the initial layer, bounded by the number of B-layers
  const std::uint64_t total = b_layer_count(start);
  Budget{ctx.budget}.require(total, "path-ca orbit");
  std::uint64_t orbit = 0;
  PathLayerConfig walk = start;
  do {
    walk = apply_path_ca(orient, walk, variant, popts);
    ++orbit;
  } while (!(walk == start) && orbit <= total);
  r.add("orbit", orbit);
  if (o.exhaustive) {
    std::vector<bool> seen(total, false);
    bool bijective = true;
    PathLayerConfig x = start;
    for (std::uint64_t i = 0; i < total; ++i) {
      set_b_layer(x, i);
      const std::uint64_t img = b_layer_index(apply_path_ca(orient, x, variant, popts));
      if (seen[img]) bijective = false;
      seen[img] = true;
    }
    r.add("states", total);
    r.check("bijective", bijective);
  }
  if (!o.out_layer.empty()) {
    write_file(resolve_out(ctx, o.out_layer).string(), serialize(cur));
    r.add("out_layer", o.out_layer);
  }
  return r;
}

Report cmd_hphi(const Options& o, const Context& ctx) {
  const Orientation orient = load_orientation(ctx, o.orientation);
  const PathLayerConfig start = load_layer(ctx, o.layer);
  const PathOptions popts = path_options(o);
  start.validate(orient);
  const HphiReading reading = o.literal ? HphiReading::Literal : HphiReading::PathOrder;
  const PathLayerConfig image = o.inverse ? apply_hphi_inverse(orient, start, popts, reading)
                                          : apply_hphi(orient, start, popts, reading);
  Report r("hphi");
  r.add("reading", o.literal ? "literal" : "path-order");
  r.add("inverse", o.inverse).add("changed", !(image == start));
  if (o.check_conjugacy) {
    const std::uint64_t total = b_layer_count(start);
    Budget{ctx.budget}.require(total, "hphi conjugacy check");
    bool conj = true;
    bool roundtrip = true;
    PathLayerConfig x = start;
    for (std::uint64_t i = 0; i < total; ++i) {
      set_b_layer(x, i);
      const PathLayerConfig hx = apply_hphi(orient, x, popts, reading);
      const PathLayerConfig lhs =
          apply_hphi(orient, apply_path_ca(orient, x, PathVariant::Shift, popts), popts, reading);
      const PathLayerConfig rhs = apply_path_ca(
          orient, apply_path_ca(orient, hx, PathVariant::Mobius, popts), PathVariant::Mobius, popts);
      conj = conj && lhs == rhs;
      roundtrip = roundtrip && apply_hphi_inverse(orient, hx, popts, reading) == x;
    }
    r.add("states", total);
    r.check("conjugacy", conj).check("roundtrip", roundtrip);
  }
  if (!o.out_layer.empty()) {
    write_file(resolve_out(ctx, o.out_layer).string(), serialize(image));
    r.add("out_layer", o.out_layer);
  }
  return r;
}

Report dispatch(const std::string& command, const Options& o, const Context& ctx) {
  if (command == "sim") return cmd_sim(o, ctx);
  if (command == "trace") return cmd_trace(o, ctx);
  if (command == "entropy") return cmd_entropy(o, ctx);
  if (command == "check-reversible") return cmd_reversible(o, ctx);
  if (command == "nilpotent-within") return cmd_nilpotent(o, ctx);
  if (command == "spreading") return cmd_spreading(o, ctx);
  if (command == "reduce") return cmd_reduce(o, ctx);
  if (command == "verify-witness") return cmd_witness(o, ctx);
  if (command == "graph-sft") return cmd_graph_sft(o, ctx);
  if (command == "paths") return cmd_paths(o, ctx);
  if (command == "path-ca") return cmd_path_ca(o, ctx);
  if (command == "hphi") return cmd_hphi(o, ctx);
  throw Error("unknown command '" + command + "'");
}

}  // namespace

Report execute(const std::vector<std::string>& args, const Context& ctx) {
  Parsed p = build();
  try {
    parse(p, args);
  } catch (const CLI::Error& e) {
    throw Error(std::string("usage: ") + e.what());
  }
  if (p.command == "run") throw Error("run cannot be nested inside an experiment");
  return dispatch(p.command, p.opt(), apply_globals(p.opt(), ctx));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Parsed p = build();
  try {
    parse(p, args);
  } catch (const CLI::Error& e) {
    return p.app->exit(e, out, err);
  }
  Context ctx;
  ctx.diagnostics = &err;
  ctx = apply_globals(p.opt(), ctx);
  try {
    if (p.command == "run") {
      const fs::path file(p.opt().experiment);
      const fs::path dir = file.parent_path().empty() ? fs::path(".") : file.parent_path();
      ExperimentSpec spec = parse_experiment(read_file(file.string()), dir);
      if (!p.opt().out.empty()) spec.output_dir = ctx.output_dir;
      const ExperimentResult result = run_experiment(spec, ctx);
      out << (ctx.json ? experiment_json(spec, result).dump(2) + "\n" : experiment_text(result));
      if (!result.error.empty()) {
        err << "error: line " << result.error_line << ": " << result.error << '\n';
        return 2;
      }
      return result.all_passed ? 0 : 1;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = dispatch(p.command, p.opt(), ctx);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    err << "timing " << p.command << ' ' << dt.count() << "s\n";
    out << (ctx.json ? r.to_json().dump(2) : r.to_text()) << '\n';
    return r.passed().value_or(true) ? 0 : 1;
  } catch (const std::exception& e) {
    if (ctx.json) {
      nlohmann::ordered_json j;
      j["command"] = p.command;
      j["error"] = e.what();
      err << j.dump() << '\n';
    } else {
      err << "error: " << p.command << ": " << e.what() << '\n';
    }
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace cadyn::cli
