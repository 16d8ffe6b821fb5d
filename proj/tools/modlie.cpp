// modlie: prolongs, checks, queerification and export of modular Lie (super)algebras.
//
// Exit codes: 0 success, 1 a requested check or a closure condition failed, 2 invalid input.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modlie/modlie.hpp"

namespace {

using namespace modlie;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInvalid = 2;

struct Checks {
  bool axioms = false;
  bool simple = false;
  bool signature = false;
  bool core = false;
  std::uint64_t rng_seed = 1;

  bool any() const { return axioms || simple || signature || core; }
};

struct ProlongConfig {
  std::uint64_t p = 0;
  std::string seed;
  std::optional<std::size_t> n;
  std::vector<std::uint32_t> N;
  int max_degree = 2;
  std::string partial;
  std::string partial_rule = "generated";
  unsigned threads = 1;
  std::string format = "table";
  std::string out;
  Checks checks;
};

struct CheckConfig {
  std::string in;
  Checks checks;
};

struct QueerConfig {
  std::string in;
  std::string family;
  std::size_t n = 2;
  std::optional<std::uint64_t> p;
  bool p2 = false;
  std::string out;
};

struct ExportConfig {
  std::string in;
  std::string format = "json";
  std::string out;
};

bool invalid_input(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadChar:
    case ErrorCode::WrongChar:
    case ErrorCode::UnsupportedChar:
    case ErrorCode::BadSize:
    case ErrorCode::IncompatibleKind:
    case ErrorCode::NotOdd:
    case ErrorCode::InvalidInput:
    case ErrorCode::NotSubmodule:
      return true;
    default:
      return false;
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

/// "16 46 16 | total 78": dimensions by ascending degree.
template <class Field>
std::string dims_line(const SCAlgebra<Field>& a) {
  std::map<int, std::size_t> dims;
  for (const auto& b : a.basis()) ++dims[b.degree];
  std::string s;
  for (const auto& [k, d] : dims) s += std::to_string(d) + " ";
  return s + "| total " + std::to_string(a.dim());
}

template <class Field>
std::string table_text(const SCAlgebra<Field>& a) {
  std::map<int, std::pair<std::size_t, std::size_t>> dims;
  for (const auto& b : a.basis()) (b.odd ? dims[b.degree].second : dims[b.degree].first)++;
  std::ostringstream s;
  bool first = true;
  for (const auto& [k, d] : dims) {
    s << (first ? "" : " ") << k << ":" << d.first;
    if (a.has_odd()) s << "|" << d.second;
    first = false;
  }
  s << "\n";
  const auto& f = a.field();
  auto terms = [&](const SparseVector<Field>& c) {
    std::string t;
    for (const auto& [k, v] : c) {
      if (!t.empty()) t += " + ";
      if (!f.equal(v, f.one())) t += f.to_string(v) + "*";
      t += a.basis()[k].name;
    }
    return t;
  };
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) {
      const auto c = a.bracket(i, j);
      if (!c.empty()) s << "[" << a.basis()[i].name << ", " << a.basis()[j].name << "] = " << terms(c) << "\n";
    }
    if (!a.square(i).empty()) s << a.basis()[i].name << "^2 = " << terms(a.square(i)) << "\n";
  }
  return s.str();
}

/// Prints one line per requested check; returns whether all passed.
template <class Field>
bool run_checks(const SCAlgebra<Field>& a, const Checks& c) {
  bool ok = true;
  if (c.axioms) {
    const auto rep = verify_axioms(a);
    std::cout << "axioms: " << (rep.ok ? "pass" : "FAIL") << " (" << rep.checked << " checks)\n";
    for (const auto& v : rep.violations) std::cout << "  " << v << "\n";
    ok = ok && rep.ok;
  }
  if (c.simple) {
    const auto cert = is_simple(a, c.rng_seed);
    std::cout << "simple: " << (cert.simple ? "true" : "false");
    if (!cert.ideal.empty()) std::cout << " (proper ideal of dim " << cert.ideal.size() << ")";
    std::cout << "\n";
    ok = ok && cert.simple;
  }
  if (c.core) {
    const auto core = simple_core(a);
    const bool good = core.dim() == 0 || is_simple(core, c.rng_seed).simple;
    std::cout << "core: dim " << core.dim_even() << "|" << core.dim_odd() << (good ? " (simple or zero)" : " (NOT simple)")
              << "\n";
    ok = ok && good;
  }
  if (c.signature) std::cout << "signature: " << signature(a).to_string() << "\n";
  return ok;
}

void add_check_flags(CLI::App* cmd, Checks& c) {
  cmd->add_flag("--axioms", c.axioms, "verify the (super) Jacobi and squaring axioms");
  cmd->add_flag("--simple", c.simple, "decide simplicity");
  cmd->add_flag("--signature", c.signature, "print the invariant signature");
  cmd->add_flag("--core", c.core, "compute the simple core and check it");
  cmd->add_option("--rng-seed", c.rng_seed, "seed of the randomized submodule search");
}

template <class Field>
std::vector<FieldSum<Field>> read_partial_basis(const Field& field, const Variables& vars, const std::string& path) {
  const auto text = read_file(path);
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("g1") || !j["g1"].is_array()) {
    fail(ErrorCode::InvalidInput, path + ": expected {\"g1\": [field, ...]}");
  }
  std::vector<FieldSum<Field>> out;
  for (const auto& s : j["g1"]) {
    if (!s.is_string()) fail(ErrorCode::InvalidInput, path + ": fields are strings");
    out.push_back(parse_field(field, vars, s.get<std::string>()));
  }
  return out;
}

template <class Field>
int cmd_prolong(const Field& field, const ProlongConfig& cfg) {
  const auto heights = cfg.N.empty() ? std::nullopt : std::optional(cfg.N);
  const auto r = build_seed(field, cfg.seed, cfg.n, heights);
  ProlongOptions opt;
  opt.threads = cfg.threads;
  auto P = complete_prolong(field, r, cfg.max_degree, opt);
  if (!cfg.partial.empty()) {
    const auto rule = cfg.partial_rule == "maximal" ? PartialRule::maximal : PartialRule::generated;
    std::vector<FieldSum<Field>> h1;
    const std::string prefix = "g1-part:";
    if (cfg.partial.rfind(prefix, 0) == 0) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(cfg.partial.substr(prefix.size()));
      } catch (const std::exception&) {
        fail(ErrorCode::InvalidInput, "--partial: bad index in '" + cfg.partial + "'");
      }
      const auto split = split_g1(field, P);
      std::cerr << "g1 splits into parts of dims";
      for (const auto& part : split.parts) std::cerr << " " << part.size();
      std::cerr << (split.semisimple ? "" : " (filtration, not semisimple)") << "\n";
      if (idx >= split.parts.size()) {
        fail(ErrorCode::InvalidInput, "--partial: part " + std::to_string(idx) + " of " + std::to_string(split.parts.size()));
      }
      h1 = split.parts[idx];
    } else {
      h1 = read_partial_basis(field, P.vars, cfg.partial);
    }
    P = partial_prolong(field, P, h1, cfg.max_degree, rule);
  }
  for (const auto& w : P.warnings) std::cerr << "warning: " << w << "\n";

  const bool need_algebra = !cfg.out.empty() || cfg.format == "json" || cfg.checks.any();
  std::optional<SCAlgebra<Field>> a;
  AlgebraMeta meta;
  meta.seed = r.seed;
  meta.D = cfg.max_degree;
  meta.truncated = !P.terminated;
  if (need_algebra) {
    if (!P.terminated) std::cerr << "warning: prolong not finite within degree " << cfg.max_degree << "; brackets above it are dropped\n";
    a = from_fields(field, P, !P.terminated);
  }
  if (cfg.format == "json") {
    std::cout << algebra_to_json(*a, P.vars.heights, meta);
  } else if (cfg.format == "dims") {
    std::string s;
    for (const auto& [k, xs] : P.components) {
      if (!xs.empty()) s += std::to_string(xs.size()) + " ";
    }
    std::cout << s << "| total " << P.total_dim() << "\n";
  } else {
    std::cout << P.dims_table() << "\n";
  }
  if (!cfg.out.empty()) write_file(cfg.out, algebra_to_json(*a, P.vars.heights, meta));
  if (cfg.checks.any()) return run_checks(*a, cfg.checks) ? kOk : kCheckFailed;
  return kOk;
}

int cmd_check(const CheckConfig& cfg) {
  const auto loaded = parse_algebra(read_file(cfg.in), cfg.in);
  auto checks = cfg.checks;
  if (!checks.any()) checks.axioms = true;
  return std::visit([&](const auto& a) { return run_checks(a, checks) ? kOk : kCheckFailed; }, loaded.algebra);
}

template <class Field>
int queerify_matrices(const Field& f, const MatrixAlgebra<Field>& m, const QueerConfig& cfg, const std::string& seed) {
  const auto q = cfg.p2 ? queerify_p2(f, m) : queerify_assoc(f, m);
  const auto rep = verify_axioms(q);
  AlgebraMeta meta;
  meta.seed = seed;
  emit(cfg.out, algebra_to_json(q, {}, meta));
  std::cerr << "queerified: dim " << q.dim_even() << "|" << q.dim_odd() << ", axioms " << (rep.ok ? "pass" : "FAIL")
            << "\n";
  for (const auto& v : rep.violations) std::cerr << "  " << v << "\n";
  return rep.ok ? kOk : kCheckFailed;
}

int cmd_queerify(const QueerConfig& cfg) {
  if (cfg.in.empty() == cfg.family.empty()) fail(ErrorCode::InvalidInput, "give exactly one of --in and --seed");
  if (!cfg.in.empty()) {
    const auto loaded = parse_matrix_algebra(read_file(cfg.in), cfg.in);
    if (cfg.p && *cfg.p != loaded.p) {
      fail(ErrorCode::InvalidInput, "--p " + std::to_string(*cfg.p) + " disagrees with p = " + std::to_string(loaded.p) + " in " + cfg.in);
    }
    return with_field(loaded.p, [&](const auto& f) {
      using Field = std::decay_t<decltype(f)>;
      return queerify_matrices(f, std::get<MatrixAlgebra<Field>>(loaded.matrices), cfg, cfg.in);
    });
  }
  if (!cfg.p) fail(ErrorCode::InvalidInput, "--p is required with --seed");
  if (!is_matrix_family(cfg.family)) fail(ErrorCode::InvalidInput, "--seed must be one of gl, sl, sp, o");
  return with_field(*cfg.p, [&](const auto& f) {
    return queerify_matrices(f, seed_matrix(f, cfg.family, cfg.n), cfg, cfg.family + ":" + std::to_string(cfg.n));
  });
}

int cmd_export(const ExportConfig& cfg) {
  const auto loaded = parse_algebra(read_file(cfg.in), cfg.in);
  return std::visit(
      [&](const auto& a) {
        if (cfg.format == "json") {
          emit(cfg.out, algebra_to_json(a, loaded.N, loaded.meta));
        } else if (cfg.format == "dims") {
          emit(cfg.out, dims_line(a) + "\n");
        } else {
          emit(cfg.out, table_text(a));
        }
        return kOk;
      },
      loaded.algebra);
}

int cmd_seed_list() {
  for (const auto& s : seed_list()) {
    std::cout << s.name << "\t" << s.description << "\tn: " << s.n_range;
    if (s.default_n) std::cout << " (default " << s.default_n << ")";
    std::cout << "\tp: " << s.p_range << "\n";
  }
  std::cout << "matrix families (queerify --seed): gl, sl, sp, o\n";
  return kOk;
}

const auto kPrimeOrZero = CLI::Validator(
    [](std::string& s) -> std::string {
      try {
        std::size_t used = 0;
        const auto p = std::stoull(s, &used);
        if (used == s.size() && (p == 0 || is_prime(p))) return {};
      } catch (const std::exception&) {
      }
      return "p must be prime or 0";
    },
    "PRIME|0");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modular Lie (super)algebras: prolongs, checks, queerification"};
  app.set_config("--config", "", "read options from a TOML/INI file (same names as the flags)");
  app.require_subcommand(1);

  ProlongConfig pc;
  auto* prolong = app.add_subcommand("prolong", "complete or partial prolong of a seed pair");
  prolong->add_option("--p", pc.p, "characteristic (prime, or 0 for the rationals)")->required()->check(kPrimeOrZero);
  prolong->add_option("--seed", pc.seed, "seed pair (see `seed --list`)")->required();
  prolong->add_option("--n", pc.n, "seed parameter");
  prolong->add_option("--N", pc.N, "divided-power heights, one per even variable")->delimiter(',');
  prolong->add_option("--max-degree,-D", pc.max_degree, "highest degree to compute")->check(CLI::PositiveNumber);
  prolong->add_option("--partial", pc.partial, "g1-part:<i> from the g1 split, or a JSON file {\"g1\": [...]}");
  prolong->add_option("--partial-rule", pc.partial_rule, "generated | maximal")
      ->check(CLI::IsMember({"generated", "maximal"}));
  prolong->add_option("--threads", pc.threads, "worker threads for the degree solves")->check(CLI::Range(1u, 256u));
  prolong->add_option("--format", pc.format, "table | dims | json")->check(CLI::IsMember({"table", "dims", "json"}));
  prolong->add_option("--out,-o", pc.out, "write the algebra as JSON");
  add_check_flags(prolong, pc.checks);

  CheckConfig cc;
  auto* check = app.add_subcommand("check", "verify properties of an algebra file");
  check->add_option("--in,in", cc.in, "algebra JSON file")->required();
  add_check_flags(check, cc.checks);

  QueerConfig qc;
  std::uint64_t qp = 0;
  auto* queer = app.add_subcommand("queerify", "Q(A) of an associative matrix algebra, or the p = 2 variant");
  queer->add_option("--in", qc.in, "matrix JSON file {p, n, matrices, labels}");
  queer->add_option("--seed", qc.family, "matrix family gl | sl | sp | o");
  queer->add_option("--n", qc.n, "matrix size");
  auto* qp_opt = queer->add_option("--p", qp, "characteristic")->check(kPrimeOrZero);
  queer->add_flag("--p2", qc.p2, "p = 2 queerification of a squaring-closed Lie algebra");
  queer->add_option("--out,-o", qc.out, "output file (default: standard output)");

  ExportConfig ec;
  auto* exp = app.add_subcommand("export", "re-emit an algebra file");
  exp->add_option("--in,in", ec.in, "algebra JSON file")->required();
  exp->add_option("--format", ec.format, "json | table | dims")->check(CLI::IsMember({"json", "table", "dims"}));
  exp->add_option("--out,-o", ec.out, "output file (default: standard output)");

  bool list = false;
  auto* seed = app.add_subcommand("seed", "seed registry");
  seed->add_flag("--list", list, "list the available seeds")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*prolong) return with_field(pc.p, [&](const auto& f) { return cmd_prolong(f, pc); });
    if (*check) return cmd_check(cc);
    if (*queer) {
      if (qp_opt->count()) qc.p = qp;
      return cmd_queerify(qc);
    }
    if (*exp) return cmd_export(ec);
    if (*seed) return cmd_seed_list();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid_input(e.code()) ? kInvalid : kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInvalid;
}
