#include "dpz/run.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dpz/enumerate.hpp"
#include "dpz/error.hpp"
#include "dpz/exact.hpp"
#include "dpz/forms.hpp"
#include "dpz/gf.hpp"
#include "dpz/lattice.hpp"
#include "dpz/sieve.hpp"

namespace dpz {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail_config("config line '" + line + "' is not key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail_config("config line '" + line + "' has an empty key");
    if (cfg.has(key)) fail_config("config key '" + key + "' given twice");
    cfg.set(key, trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::uint64_t RunConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 19)
    fail_config("config key '" + key + "' needs a non-negative integer, got '" + v + "'");
  return std::stoull(v);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  fail_config("config key '" + key + "' needs true or false, got '" + it->second + "'");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"count",  "tamagawa", "scan",  "converge",
                                                  "audit-upper", "limits", "cones", "admissible"};
  return names;
}

namespace {

// Keys that shape the output but never its content stay out of the embedded
// config, so reports are byte-identical across thread counts and formats.
const std::set<std::string> kPresentationKeys = {"threads", "format"};

const std::set<std::string> kCommonKeys = {"command", "q", "r", "format", "threads", "max_exact_bits"};

std::set<std::string> allowed_keys(const std::string& cmd) {
  std::set<std::string> keys = kCommonKeys;
  auto add = [&](std::initializer_list<const char*> more) {
    for (auto k : more) keys.insert(k);
  };
  if (cmd == "count") add({"model", "mode", "budget", "D", "class", "a", "a_prime", "k", "exact", "virtual", "convention"});
  else if (cmd == "scan") add({"model", "mode", "budget", "D", "hmax", "cone", "include_zero", "convention"});
  else if (cmd == "converge") add({"model", "mode", "budget", "D", "class", "mmax"});
  else if (cmd == "audit-upper") add({"model", "mode", "budget", "hmax", "cone"});
  else if (cmd == "limits") add({"D", "n_max"});
  else if (cmd == "tamagawa") add({"D"});
  else if (cmd == "admissible") add({"class", "qsym"});
  return keys;
}

// Shared state resolved once per run.
struct Context {
  const RunConfig& cfg;
  Table table;
  std::uint64_t q = 2;
  int r = 3;
  std::uint64_t max_exact_bits = 4096;

  void record(const std::string& key, const std::string& value) {
    if (!kPresentationKeys.count(key)) table.config.emplace_back(key, value);
  }
  std::string str(const std::string& key, const std::string& fallback) {
    auto v = cfg.get(key, fallback);
    record(key, v);
    return v;
  }
  std::uint64_t num(const std::string& key, std::uint64_t fallback) {
    auto v = cfg.get_uint(key, fallback);
    record(key, std::to_string(v));
    return v;
  }
  bool flag(const std::string& key, bool fallback) {
    bool v = cfg.get_bool(key, fallback);
    record(key, v ? "true" : "false");
    return v;
  }

  // Exact rational, or its fingerprint when it is too large to print usefully.
  std::string exact(const mpq_class& x) const {
    std::size_t bits = mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
    if (bits > max_exact_bits) return "fingerprint:" + fingerprint(x);
    return rational_string(x);
  }
};

int checked_r(std::uint64_t r, int lo, int hi) {
  if (r < static_cast<std::uint64_t>(lo) || r > static_cast<std::uint64_t>(hi))
    fail_config("r must be in " + std::to_string(lo) + ".." + std::to_string(hi));
  return static_cast<int>(r);
}

std::uint64_t checked_q(std::uint64_t q) {
  if (!prime_power(q)) fail_config("q = " + std::to_string(q) + " is not a prime power");
  return q;
}

SymbolicQ symbolic(std::uint64_t q) {
  auto pp = prime_power(q);
  return SymbolicQ{pp->first, pp->second};
}

std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::replace(s.begin(), s.end(), '\n', '|');
  return s;
}

SurfaceModel load_model(Context& ctx) {
  std::string m = ctx.str("model", "canonical");
  SurfaceModel model = [&] {
    if (m == "canonical") return SurfaceModel::canonical(ctx.q, ctx.r);
    // Inline text uses '|' as the line separator, as in the embedded model.text.
    if (m.rfind("inline:", 0) == 0) {
      std::string text = m.substr(7);
      std::replace(text.begin(), text.end(), '|', '\n');
      return SurfaceModel::parse(text);
    }
    return SurfaceModel::load(m);
  }();
  if (model.q() != ctx.q) fail_config("model is over F_" + std::to_string(model.q()) + " but q = " + std::to_string(ctx.q));
  if (model.r() != ctx.r) fail_config("model has r = " + std::to_string(model.r()) + " but r = " + std::to_string(ctx.r));
  ctx.record("model.text", one_line(model.to_text()));
  return model;
}

CountOptions count_options(Context& ctx) {
  CountOptions opt;
  opt.mode = parse_mode(ctx.str("mode", "accelerated"));
  opt.budget = ctx.num("budget", kDefaultBudget);
  std::uint64_t threads = ctx.cfg.get_uint("threads", 1);
  if (threads < 1 || threads > 256) fail_config("threads must be in 1..256");
  opt.threads = static_cast<unsigned>(threads);
  return opt;
}

DivisorClass parse_class(const std::string& text, int r) {
  DivisorClass c = text == "-K" ? DivisorClass::anticanonical(r) : DivisorClass::parse(text);
  if (c.r() != r) fail_config("class '" + text + "' has r = " + std::to_string(c.r()) + " but r = " + std::to_string(r));
  return c;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail_config("'" + tok + "' is not an integer");
    }
  }
  return out;
}

constexpr std::uint64_t kC3 = std::uint64_t{kC3Base} * kC3Base * kC3Base * kC3Base;

void hypothesis_summary(Context& ctx) {
  const std::uint64_t c3 = kC3;
  bool q_c3 = ctx.q > c3;
  ctx.table.summary.emplace_back("hypothesis.q_exceeds_C3", q_c3 ? "true" : "false");
  ctx.table.summary.emplace_back("hypothesis.C3", std::to_string(c3));
  ctx.table.summary.emplace_back("hypothesis.C", "2^" + std::to_string(kLogTwoC));
}

// "true"/"false" for q^eps > 2^48 when the class admits the comparison.
std::string eps_flag(std::uint64_t q, const DivisorClass& alpha) {
  if (alpha.is_zero() || alpha.r() > 5 || !is_nef(alpha)) return "n/a";
  return admissibility(symbolic(q), alpha).q_pow_eps_exceeds_C ? "true" : "false";
}

void regime_note(Context& ctx, bool any_eps) {
  ctx.table.summary.emplace_back("hypothesis.q_pow_eps_exceeds_C", any_eps ? "true" : "false");
  bool proven = any_eps && ctx.q > kC3;
  ctx.table.summary.emplace_back("hypothesis.note", proven ? "theorem hypotheses hold"
                                                           : "outside the proven regime: desk-scale comparison only");
}

// q^{h+2} / (1 - q^{-1})^{r+2}
mpq_class upper_bound(std::uint64_t q, std::int64_t h, int r) {
  mpz_class qq = q;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(h + 2 + r + 2));
  mpz_class qm1 = q - 1;
  mpz_pow_ui(den.get_mpz_t(), qm1.get_mpz_t(), static_cast<unsigned long>(r + 2));
  mpq_class b(num, den);
  b.canonicalize();
  return b;
}

mpq_class q_power(std::uint64_t q, std::int64_t e) {
  mpz_class qq = q, p;
  mpz_pow_ui(p.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(1, p) : mpq_class(p);
}

std::string rel_gap_or_undefined(const Context& ctx, const mpq_class& exact, const mpq_class& approx,
                                 std::string* dec) {
  if (exact == 0) {
    *dec = "undefined";
    return "undefined";
  }
  mpq_class g = abs(exact - approx) / exact;
  *dec = decimal_string(g);
  return ctx.exact(g);
}

// Rows shared by count and scan.
const std::vector<std::string> kCountColumns = {
    "class",         "h",          "a",          "a_prime",        "k",
    "regime",        "sections",   "morphisms",  "virtual",        "virtual_dec",
    "compared",      "rel_gap",    "rel_gap_dec", "ratio",         "ratio_dec",
    "tau",           "tau_dec",    "bound",      "bound_dec",      "within_bound",
    "q_eps_exceeds_C"};

struct CountRowInput {
  std::string class_text;
  std::int64_t h = 0, a = 0, a_prime = 0;
  std::vector<std::int64_t> k;
  std::optional<CountResult> exact;
  std::optional<VirtualCount> virt;
  std::string eps;
};

std::vector<std::string> count_row(const Context& ctx, const CountRowInput& in, bool torsor,
                                   const std::optional<mpq_class>& tau) {
  std::vector<std::string> row;
  row.push_back(in.class_text);
  row.push_back(std::to_string(in.h));
  row.push_back(std::to_string(in.a));
  row.push_back(std::to_string(in.a_prime));
  row.push_back(join(in.k));
  std::vector<std::size_t> ku(in.k.begin(), in.k.end());
  auto flags = regime_flags(static_cast<std::size_t>(in.a), static_cast<std::size_t>(in.a_prime), ku);
  row.push_back(flags.both() ? "in" : "out");
  row.push_back(in.exact ? in.exact->raw.get_str() : "n/a");
  row.push_back(in.exact ? in.exact->morphisms.get_str() : "n/a");
  // Under the torsor convention the virtual value estimates the raw pair count.
  std::optional<mpq_class> virt;
  if (in.virt) virt = torsor ? in.virt->sections : in.virt->morphisms;
  row.push_back(virt ? ctx.exact(*virt) : "n/a");
  row.push_back(virt ? decimal_string(*virt) : "n/a");
  row.push_back(torsor ? "sections" : "morphisms");
  if (in.exact && virt) {
    mpq_class ex(torsor ? in.exact->raw : in.exact->morphisms);
    std::string dec;
    row.push_back(rel_gap_or_undefined(ctx, ex, *virt, &dec));
    row.push_back(dec);
  } else {
    row.push_back("n/a");
    row.push_back("n/a");
  }
  if (in.exact) {
    mpq_class ratio = mpq_class(in.exact->morphisms) / q_power(ctx.q, in.h);
    row.push_back(ctx.exact(ratio));
    row.push_back(decimal_string(ratio));
  } else {
    row.push_back("n/a");
    row.push_back("n/a");
  }
  row.push_back(tau ? ctx.exact(*tau) : "n/a");
  row.push_back(tau ? decimal_string(*tau) : "n/a");
  mpq_class bound = upper_bound(ctx.q, in.h, ctx.r);
  row.push_back(ctx.exact(bound));
  row.push_back(decimal_string(bound));
  row.push_back(in.exact ? (mpq_class(in.exact->morphisms) <= bound ? "true" : "false") : "n/a");
  row.push_back(in.eps);
  return row;
}

bool torsor_convention(Context& ctx) {
  std::string c = ctx.str("convention", "torsor");
  if (c != "torsor" && c != "quotient") fail_config("convention must be torsor or quotient");
  return c == "torsor";
}

Table cmd_count(Context& ctx) {
  SurfaceModel model = load_model(ctx);
  CountOptions opt = count_options(ctx);
  std::uint64_t D = ctx.num("D", 12);
  bool torsor = torsor_convention(ctx);
  bool want_exact = ctx.flag("exact", true);
  bool want_virtual = ctx.flag("virtual", true);

  CountRowInput in;
  hypothesis_summary(ctx);
  if (ctx.cfg.has("class")) {
    if (ctx.cfg.has("a") || ctx.cfg.has("a_prime") || ctx.cfg.has("k")) fail_config("give either class or (a, a_prime, k)");
    DivisorClass alpha = parse_class(ctx.str("class", "-K"), ctx.r);
    auto inv = invariants(alpha);
    in.class_text = alpha.to_string();
    in.h = inv.h;
    in.a = inv.a;
    in.a_prime = inv.a_prime;
    in.k = inv.k;
    in.eps = eps_flag(ctx.q, alpha);
  } else {
    in.a = static_cast<std::int64_t>(ctx.num("a", 0));
    in.a_prime = static_cast<std::int64_t>(ctx.num("a_prime", 0));
    in.k = parse_ints(ctx.str("k", join(std::vector<std::int64_t>(ctx.r, 0))));
    if (static_cast<int>(in.k.size()) != ctx.r) fail_config("k needs exactly r entries");
    for (auto x : in.k)
      if (x < 0) fail_config("k entries must be non-negative");
    DivisorClass alpha = DivisorClass::from_invariants(in.a, in.a_prime, in.k);
    in.class_text = alpha.to_string();
    in.h = invariants(alpha).h;
    in.eps = eps_flag(ctx.q, alpha);
  }
  if (in.a < 0 || in.a_prime < 0) fail_config("class has negative fiber degree");
  for (auto x : in.k)
    if (x < 0) fail_config("class has negative exceptional degree");
  std::vector<std::size_t> ku(in.k.begin(), in.k.end());

  if (want_exact)
    in.exact = count_sections(model, static_cast<std::size_t>(in.a), static_cast<std::size_t>(in.a_prime), ku, opt);
  std::optional<mpq_class> tau;
  if (want_virtual) {
    std::uint64_t d = std::max<std::uint64_t>(D, ku.empty() ? 0 : *std::max_element(ku.begin(), ku.end()));
    auto z = virtual_zeta(ctx.r, ctx.q, ku, d);
    in.virt = virtual_count(static_cast<std::size_t>(in.a), static_cast<std::size_t>(in.a_prime), ku, z);
    tau = tamagawa(ctx.r, ctx.q, D).value;
    ctx.table.summary.emplace_back("virtual.tail_bound", ctx.exact(z.tail.bound));
    ctx.table.summary.emplace_back("virtual.tail_valid", z.tail.valid ? "true" : "false");
  }
  ctx.table.columns = kCountColumns;
  ctx.table.add_row(count_row(ctx, in, torsor, tau));
  regime_note(ctx, in.eps == "true");
  return ctx.table;
}

Table cmd_scan(Context& ctx) {
  SurfaceModel model = load_model(ctx);
  CountOptions opt = count_options(ctx);
  std::uint64_t D = ctx.num("D", 12);
  bool torsor = torsor_convention(ctx);
  std::int64_t hmax = static_cast<std::int64_t>(ctx.num("hmax", 4));
  ConeSpec cone = ConeSpec::parse(ctx.r, ctx.str("cone", "nef"));
  bool include_zero = ctx.flag("include_zero", false);

  auto classes = enumerate_in_cone(cone, hmax, include_zero);
  std::vector<std::size_t> caps(ctx.r, 0);
  for (const auto& c : classes) {
    auto inv = invariants(c);
    for (int i = 0; i < ctx.r; ++i) caps[i] = std::max<std::size_t>(caps[i], static_cast<std::size_t>(inv.k[i]));
  }
  std::uint64_t d = std::max<std::uint64_t>(D, caps.empty() ? 0 : *std::max_element(caps.begin(), caps.end()));
  auto z = virtual_zeta(ctx.r, ctx.q, caps, d);
  mpq_class tau = tamagawa(ctx.r, ctx.q, D).value;

  hypothesis_summary(ctx);
  ctx.table.columns = kCountColumns;
  bool any_eps = false;
  mpz_class total = 0;
  for (const auto& alpha : classes) {
    auto inv = invariants(alpha);
    CountRowInput in;
    in.class_text = alpha.to_string();
    in.h = inv.h;
    in.a = inv.a;
    in.a_prime = inv.a_prime;
    in.k = inv.k;
    in.eps = eps_flag(ctx.q, alpha);
    any_eps = any_eps || in.eps == "true";
    std::vector<std::size_t> ku(inv.k.begin(), inv.k.end());
    in.exact = count_sections(model, static_cast<std::size_t>(inv.a), static_cast<std::size_t>(inv.a_prime), ku, opt);
    in.virt = virtual_count(static_cast<std::size_t>(inv.a), static_cast<std::size_t>(inv.a_prime), ku, z);
    total += in.exact->morphisms;
    ctx.table.add_row(count_row(ctx, in, torsor, tau));
  }
  ctx.table.summary.emplace_back("classes", std::to_string(classes.size()));
  ctx.table.summary.emplace_back("N_exact", total.get_str());
  ctx.table.summary.emplace_back("virtual.tail_bound", ctx.exact(z.tail.bound));
  ctx.table.summary.emplace_back("virtual.tail_valid", z.tail.valid ? "true" : "false");
  regime_note(ctx, any_eps);
  return ctx.table;
}

Table cmd_converge(Context& ctx) {
  SurfaceModel model = load_model(ctx);
  CountOptions opt = count_options(ctx);
  std::uint64_t D = ctx.num("D", 20);
  DivisorClass alpha = parse_class(ctx.str("class", "-K"), ctx.r);
  std::uint64_t mmax = ctx.num("mmax", 2);
  if (mmax < 1) fail_config("mmax must be >= 1");
  mpq_class tau = tamagawa(ctx.r, ctx.q, D).value;

  hypothesis_summary(ctx);
  ctx.table.columns = {"m", "class", "h", "morphisms", "ratio", "ratio_dec", "rel_error", "rel_error_dec"};
  std::vector<mpq_class> errors;
  for (std::uint64_t m = 1; m <= mmax; ++m) {
    DivisorClass ma = static_cast<std::int64_t>(m) * alpha;
    auto inv = invariants(ma);
    mpz_class mor = count_morphisms(model, ma, opt);
    mpq_class ratio = mpq_class(mor) / q_power(ctx.q, inv.h);
    mpq_class err = abs(ratio - tau) / tau;
    errors.push_back(err);
    ctx.table.add_row({std::to_string(m), ma.to_string(), std::to_string(inv.h), mor.get_str(), ctx.exact(ratio),
                       decimal_string(ratio), ctx.exact(err), decimal_string(err)});
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
  ctx.table.summary.emplace_back("tau", ctx.exact(tau));
  ctx.table.summary.emplace_back("tau_dec", decimal_string(tau));
  ctx.table.summary.emplace_back("rel_error_decreasing", decreasing ? "true" : "false");
  ctx.table.summary.emplace_back("final_rel_error_dec", decimal_string(errors.back()));
  regime_note(ctx, eps_flag(ctx.q, alpha) == "true");
  return ctx.table;
}

Table cmd_audit_upper(Context& ctx) {
  SurfaceModel model = load_model(ctx);
  CountOptions opt = count_options(ctx);
  std::int64_t hmax = static_cast<std::int64_t>(ctx.num("hmax", 6));
  ConeSpec cone = ConeSpec::parse(ctx.r, ctx.str("cone", "nef"));

  hypothesis_summary(ctx);
  ctx.table.columns = {"class", "h", "a", "a_prime", "k", "morphisms", "bound", "bound_dec", "ok"};
  std::uint64_t audited = 0, skipped = 0, violations = 0;
  bool any_eps = false;
  for (const auto& alpha : enumerate_in_cone(cone, hmax, false)) {
    auto inv = invariants(alpha);
    std::vector<std::size_t> ku(inv.k.begin(), inv.k.end());
    if (!regime_flags(static_cast<std::size_t>(inv.a), static_cast<std::size_t>(inv.a_prime), ku).both()) {
      ++skipped;
      continue;
    }
    any_eps = any_eps || eps_flag(ctx.q, alpha) == "true";
    mpz_class mor = count_morphisms(model, alpha, opt);
    mpq_class bound = upper_bound(ctx.q, inv.h, ctx.r);
    bool ok = mpq_class(mor) <= bound;
    ++audited;
    if (!ok) ++violations;
    ctx.table.add_row({alpha.to_string(), std::to_string(inv.h), std::to_string(inv.a), std::to_string(inv.a_prime),
                       join(inv.k), mor.get_str(), ctx.exact(bound), decimal_string(bound), ok ? "true" : "false"});
  }
  ctx.table.summary.emplace_back("audited", std::to_string(audited));
  ctx.table.summary.emplace_back("skipped_outside_regime", std::to_string(skipped));
  ctx.table.summary.emplace_back("violations", std::to_string(violations));
  regime_note(ctx, any_eps);
  return ctx.table;
}

Table cmd_limits(Context& ctx) {
  std::uint64_t D = ctx.num("D", 20);
  std::uint64_t n_max = ctx.num("n_max", 3);
  auto rep = limit_check(ctx.r, ctx.q, static_cast<std::size_t>(n_max), D);
  mpq_class tau = tamagawa(ctx.r, ctx.q, D).value;
  mpq_class lhs = q_power(ctx.q, 2) * rep.c / ((1 - q_power(ctx.q, -1)) * (1 - q_power(ctx.q, -1)));

  hypothesis_summary(ctx);
  ctx.table.columns = {"n", "coefficient", "coefficient_dec", "gap", "gap_dec"};
  for (std::size_t i = 0; i < rep.values.size(); ++i)
    ctx.table.add_row({std::to_string(i + 1), ctx.exact(rep.values[i]), decimal_string(rep.values[i]),
                       ctx.exact(rep.gaps[i]), decimal_string(rep.gaps[i])});
  ctx.table.summary.emplace_back("c", ctx.exact(rep.c));
  ctx.table.summary.emplace_back("c_dec", decimal_string(rep.c));
  ctx.table.summary.emplace_back("gaps_strictly_decreasing", rep.strictly_decreasing ? "true" : "false");
  ctx.table.summary.emplace_back("tau_identity", lhs == tau ? "true" : "false");
  regime_note(ctx, false);
  return ctx.table;
}

Table cmd_tamagawa(Context& ctx) {
  std::uint64_t D = ctx.num("D", 12);
  auto res = tamagawa(ctx.r, ctx.q, D);
  hypothesis_summary(ctx);
  ctx.table.columns = {"D", "tau", "tau_dec", "fingerprint", "tail_bound", "tail_bound_dec", "tail_valid"};
  ctx.table.add_row({std::to_string(D), ctx.exact(res.value), decimal_string(res.value), fingerprint(res.value),
                     ctx.exact(res.tail.bound), decimal_string(res.tail.bound), res.tail.valid ? "true" : "false"});
  ctx.table.summary.emplace_back("tail_formula", res.tail.formula);
  regime_note(ctx, false);
  return ctx.table;
}

Table cmd_cones(Context& ctx) {
  hypothesis_summary(ctx);
  ctx.table.columns = {"kind", "item", "value"};
  DivisorClass K = DivisorClass::anticanonical(ctx.r);
  auto minus_one = minus_one_classes(ctx.r);
  auto conics = conic_classes(ctx.r);
  ctx.table.add_row({"self_intersection", "-K", std::to_string(intersect(K, K))});
  for (const auto& c : minus_one) ctx.table.add_row({"minus_one", c.to_string(), "1"});
  for (const auto& c : conics) ctx.table.add_row({"conic", c.to_string(), "2"});
  ctx.table.summary.emplace_back("minus_one_classes", std::to_string(minus_one.size()));
  ctx.table.summary.emplace_back("conic_classes", std::to_string(conics.size()));
  if (ctx.r <= 5) {
    auto data = blow_down_data(ctx.r);
    for (const auto& d : data) {
      std::string item = d.fiber.to_string() + " / " + d.fiber_prime.to_string();
      for (const auto& e : d.exceptional) item += " / " + e.to_string();
      ctx.table.add_row({"blow_down", item, std::to_string(d.stability(K))});
    }
    ctx.table.add_row({"ell", "-K", rational_string(ell(K, data))});
    ctx.table.summary.emplace_back("blow_down_data", std::to_string(data.size()));
  } else {
    ctx.table.summary.emplace_back("blow_down_data", "n/a");
  }
  regime_note(ctx, false);
  return ctx.table;
}

Table cmd_admissible(Context& ctx) {
  SymbolicQ sq = SymbolicQ::parse(ctx.str("qsym", std::to_string(ctx.q)));
  if (ctx.r > 5) fail_config("admissibility needs r <= 5");
  DivisorClass alpha = parse_class(ctx.str("class", "-K"), ctx.r);
  auto rep = admissibility(sq, alpha);
  ctx.table.columns = {"quantity", "value"};
  ctx.table.add_row({"class", alpha.to_string()});
  ctx.table.add_row({"q", sq.to_string()});
  ctx.table.add_row({"h", std::to_string(rep.h)});
  ctx.table.add_row({"ell", rational_string(rep.ell)});
  ctx.table.add_row({"ell_ratio", rational_string(rep.ell_ratio)});
  ctx.table.add_row({"stability", std::to_string(rep.stability)});
  ctx.table.add_row({"eps", rational_string(rep.eps)});
  ctx.table.add_row({"sieve_level", rational_string(rep.sieve_level)});
  ctx.table.add_row({"q_pow_ell_ratio_exceeds_C", rep.q_pow_ell_ratio_exceeds_C ? "true" : "false"});
  ctx.table.add_row({"q_pow_eps_exceeds_C", rep.q_pow_eps_exceeds_C ? "true" : "false"});
  ctx.table.add_row({"q_exceeds_C3", rep.q_exceeds_C3 ? "true" : "false"});
  ctx.table.summary.emplace_back("hypothesis.q_exceeds_C3", rep.q_exceeds_C3 ? "true" : "false");
  ctx.table.summary.emplace_back("hypothesis.q_pow_eps_exceeds_C", rep.q_pow_eps_exceeds_C ? "true" : "false");
  ctx.table.summary.emplace_back("hypothesis.note", rep.note);
  return ctx.table;
}

}  // namespace

Table run(const RunConfig& cfg) {
  if (!cfg.has("command")) fail_config("config has no command");
  const std::string cmd = cfg.get("command", "");
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cmd) == names.end()) fail_config("unknown command '" + cmd + "'");
  auto allowed = allowed_keys(cmd);
  for (const auto& [k, v] : cfg.values())
    if (!allowed.count(k)) fail_config("key '" + k + "' is not understood by command " + cmd);

  Context ctx{cfg, {}};
  ctx.table.kind = cmd;
  ctx.record("command", cmd);
  ctx.q = checked_q(ctx.num("q", 2));
  ctx.r = checked_r(ctx.num("r", 3), cmd == "cones" ? 1 : 0, cmd == "count" || cmd == "tamagawa" || cmd == "limits" || cmd == "cones" ? 7 : 5);
  ctx.max_exact_bits = ctx.num("max_exact_bits", 4096);

  if (cmd == "count") return cmd_count(ctx);
  if (cmd == "scan") return cmd_scan(ctx);
  if (cmd == "converge") return cmd_converge(ctx);
  if (cmd == "audit-upper") return cmd_audit_upper(ctx);
  if (cmd == "limits") return cmd_limits(ctx);
  if (cmd == "tamagawa") return cmd_tamagawa(ctx);
  if (cmd == "cones") return cmd_cones(ctx);
  return cmd_admissible(ctx);
}

}  // namespace dpz
