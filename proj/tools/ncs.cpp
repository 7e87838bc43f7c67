// ncs: command-line front end. Every command prints one JSON report (or a
// text/CSV rendering of it) and exits 0 when all its assertions hold, 1 when
// one fails, 2 on invalid input.

#include "ncs/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ncs;

struct run_config {
  index_t T         = 0;  // 0: the command's own default
  level_t N_max     = 4;
  level_t n_max     = 4;
  std::uint64_t seed = 42;
  double tol        = -1;  // < 0: the command's own default
  std::string format = "json";
  std::string input;
  std::string space  = "MS";
  std::string family = "A";
};

struct report {
  report(json d, bool p) : doc(std::move(d)), pass(p) {}

  json doc;
  bool pass = true;
  std::optional<matrix> csv_matrix;  // set by commands that produce a matrix
};

std::string read_text(const std::string& path)
{
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw invalid_argument("cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix)
{
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

matrix read_matrix(const std::string& path)
{
  if (path.empty())
    throw invalid_argument("a matrix input is required (--input)");
  const std::string text = read_text(path);
  if (ends_with(path, ".csv"))
    return matrix_from_csv(text, path);
  return matrix_from_json(parse_json_text(text, path), path);
}

double tol_or(const run_config& c, double fallback) { return c.tol >= 0 ? c.tol : fallback; }
index_t T_or(const run_config& c, index_t fallback) { return c.T > 0 ? c.T : fallback; }

norm_p parse_norm_p(const std::string& p)
{
  if (p == "1")
    return norm_p::one;
  if (p == "2")
    return norm_p::two;
  if (p == "inf")
    return norm_p::inf;
  throw invalid_argument("p must be 1, 2 or inf");
}

ray parse_ray(const std::string& s)
{
  if (s == "(t,1)")
    return {ray_kind::row_one, 0};
  if (s == "(1,t)")
    return {ray_kind::column_one, 0};
  if (s == "(t,t)")
    return {ray_kind::diagonal, 0};
  if (s.rfind("(t,t+", 0) == 0 && s.back() == ')')
    return {ray_kind::diagonal, std::stoll(s.substr(5, s.size() - 6))};
  throw invalid_argument("ray must be (t,1), (1,t), (t,t) or (t,t+d)");
}

envelope_matrix envelope_arg(const std::string& literal, const run_config& c)
{
  if (!literal.empty())
    return read_envelope(literal);
  if (!c.input.empty())
    return read_envelope(read_text(c.input));
  throw invalid_argument("an envelope is required (--envelope or --input)");
}

// ---------------------------------------------------------------------------
// weights
// ---------------------------------------------------------------------------

report weights_eval(const run_config& c, index_t i, index_t j, level_t N, level_t n)
{
  const weight_family f{parse_weight_kind(c.family)};
  const auto v = weight_eval(f, i, j, N, n);
  json doc     = {{"family", to_string(f.kind)}, {"i", i}, {"j", j}, {"N", N}, {"n", n}, {"exact", v.is_exact()}};
  if (v.is_exact())
    doc["value"] = to_string(v.exact());
  doc["approx"] = static_cast<double>(v.approx());
  return {doc, true};
}

report weights_check(const run_config& c)
{
  const weight_family f{parse_weight_kind(c.family)};
  const index_t T = T_or(c, 200);
  const auto rep  = check_koethe_axioms(f, {T, T, c.N_max, c.n_max});
  json viol       = json::array();
  for (std::size_t k = 0; k < rep.violations.size() && k < 20; ++k)
    viol.push_back(detail::violation_json(rep.violations[k]));
  return {{{"family", to_string(f.kind)},
           {"grid", T},
           {"NMax", c.N_max},
           {"nMax", c.n_max},
           {"checked", rep.checked},
           {"violations", rep.violations.size()},
           {"first", viol},
           {"pass", rep.pass()}},
          rep.pass()};
}

report weights_ratios(const run_config& c, const std::string& shift_name)
{
  const index_t T   = T_or(c, 100);
  const double tol  = tol_or(c, 1e-12);
  double worst      = 0;
  json where;
  if (shift_name == "inner") {
    for (index_t i = 1; i <= T; ++i)
      for (index_t j = 1; j <= T; ++j)
        for (level_t N = 0; N <= c.N_max; ++N)
          for (level_t n = 1; n <= c.n_max; ++n) {
            const auto v  = compactness_ratio({weight_kind::D}, i, j, N, n, ratio_shift::inner_step).approx();
            const auto cf = compactness_ratio_closed_form(i, j, n, ratio_shift::inner_step).approx();
            const double e = static_cast<double>(std::abs(v - cf) / cf);
            if (e > worst) {
              worst = e;
              where = {{"i", i}, {"j", j}, {"N", N}, {"n", n}};
            }
          }
  } else if (shift_name == "cross") {
    for (index_t i = 1; i <= T; ++i)
      for (index_t j = 1; j <= T; ++j)
        for (level_t N = 0; N <= c.N_max; ++N)
          for (level_t n = 0; n <= c.n_max; ++n) {
            const rational v  = compactness_ratio({weight_kind::A}, i, j, N, n, ratio_shift::cross_shift).exact();
            const rational cf = compactness_ratio_closed_form(i, j, n, ratio_shift::cross_shift).exact();
            const double e    = to_double(abs(v - cf) / cf);
            if (e > worst || where.is_null()) {
              worst = e;
              where = {{"i", i}, {"j", j}, {"N", N}, {"n", n}};
            }
          }
  } else {
    throw invalid_argument("--shift must be inner or cross");
  }
  const bool pass = worst <= tol;
  return {{{"shift", shift_name}, {"grid", T}, {"maxRelErr", worst}, {"at", where}, {"tolerance", tol}, {"pass", pass}},
          pass};
}

report weights_nuclearity(const run_config& c)
{
  const auto r = check_nuclearity(T_or(c, 2000), tol_or(c, 1e-3));
  json doc     = r.detail;
  const double T = static_cast<double>(T_or(c, 2000));
  // Tail of the factored sum: 2 S (1/T) - 1/T^2 <= (pi^2/3)/T.
  doc["tailBound"] = std::numbers::pi * std::numbers::pi / 3.0 / T;
  doc["pass"]      = r.pass;
  return {doc, r.pass};
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

report norm_matrix(const run_config& c, level_t N, level_t n, const std::string& p)
{
  const matrix x = read_matrix(c.input);
  const weight_family f{parse_weight_kind(c.family)};
  const double v = matrix_norm_p(x, f, N, n, parse_norm_p(p));
  return {{{"family", to_string(f.kind)}, {"N", N}, {"n", n}, {"p", p}, {"dim", x.dim()}, {"value", v}}, true};
}

report norm_seminorm(const run_config& c, const std::string& vectors_path, int n)
{
  const matrix x = read_matrix(c.input);
  if (vectors_path.empty())
    throw invalid_argument("a bounded set is required (--vectors)");
  const json j = parse_json_text(read_text(vectors_path), vectors_path);
  if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_array())
    throw parse_error(vectors_path, "expected {\"vectors\": [...]}");
  bounded_set<complex> B;
  for (std::size_t k = 0; k < j["vectors"].size(); ++k)
    B.push_back(sequence_from_json(j["vectors"][k], vectors_path + ".vectors[" + std::to_string(k) + "]"));
  const double p   = seminorm_p(x, n, B);
  const double q   = seminorm_q(x, n, B);
  const double tol = tol_or(c, 1e-10);
  const bool pass  = std::abs(p - q) <= tol * (1 + std::max(p, q));
  return {{{"n", n}, {"p", p}, {"q", q}, {"gap", std::abs(p - q)}, {"pass", pass}}, pass};
}

// ---------------------------------------------------------------------------
// membership
// ---------------------------------------------------------------------------

report member_decide(const run_config& c, const std::string& literal)
{
  const auto x  = envelope_arg(literal, c);
  const auto sp = parse_matrix_space(c.space);
  decide_options opt;
  opt.bound_cap = c.N_max;
  json doc      = to_json(decide_membership(x, sp, opt));
  return {json{{"envelope", to_literal(x)}, {"result", doc}}, true};
}

report member_oracle(const run_config& c, const std::string& literal, level_t N, level_t n, const std::string& path)
{
  const auto x    = envelope_arg(literal, c);
  const auto kind = parse_weight_kind(c.family);
  const auto g    = path.empty() ? growth_oracle(x, kind, N, n) : ray_oracle(x, kind, N, n, parse_ray(path));
  json doc        = {{"envelope", to_literal(x)}, {"family", to_string(kind)}, {"N", N}, {"n", n}};
  if (!path.empty())
    doc["ray"] = path;
  doc["report"] = to_json(g);
  return {doc, true};
}

// ---------------------------------------------------------------------------
// centralizers
// ---------------------------------------------------------------------------

report centralizer_law(const run_config& c, int count)
{
  random_source rs(c.seed);
  const index_t T = T_or(c, 32);
  double worst    = 0;
  for (int s = 0; s < count; ++s) {
    const auto p = make_centralizer(rs.dense_matrix(T));
    worst        = std::max(worst, centralizer_law_residual(p, {{rs.dense_matrix(T), rs.dense_matrix(T)}}));
  }
  const bool pass = worst <= tol_or(c, 1e-12);
  return {{{"T", T}, {"samples", count}, {"seed", c.seed}, {"residual", worst}, {"pass", pass}}, pass};
}

report centralizer_roundtrip(const run_config& c, int count)
{
  sequence e2;
  e2.set(1, 1 / std::sqrt(2.0));
  e2.set(2, 1 / std::sqrt(2.0));
  std::vector<matrix> us;
  if (!c.input.empty()) {
    us.push_back(read_matrix(c.input));
  } else {
    random_source rs(c.seed);
    for (int s = 0; s < count; ++s)
      us.push_back(rs.dense_matrix(T_or(c, 32)));
  }
  double worst = 0;
  for (const auto& u : us)
    for (const auto& e : {sequence::unit(1), e2})
      worst = std::max(worst, max_abs_diff(reconstruct(make_centralizer(u), e), u));
  const bool pass = worst <= tol_or(c, 1e-12);
  return {{{"samples", us.size()}, {"residual", worst}, {"pass", pass}}, pass};
}

report centralizer_algebra(const run_config& c, int count)
{
  const auto r = check_centralizers(c.seed, count, T_or(c, 32), tol_or(c, 1e-12));
  json doc     = r.detail;
  doc["pass"]  = r.pass;
  return {doc, r.pass};
}

// ---------------------------------------------------------------------------
// diagonal subalgebra, merge
// ---------------------------------------------------------------------------

report diag_project_cmd(const run_config& c, level_t N, level_t n)
{
  const matrix x  = read_matrix(c.input);
  const auto d    = diag_project(x);
  const auto px   = d.to_matrix();
  const bool idem = diag_project(px).to_matrix() == px;
  const weight_family f{parse_weight_kind(c.family)};
  const double before = matrix_norm_p(x, f, N, n, norm_p::one);
  const double after  = matrix_norm_p(px, f, N, n, norm_p::one);
  const bool pass     = idem && after <= before;
  report r{{{"diagonal", to_json(d.diag)},
            {"idempotent", idem},
            {"normBefore", before},
            {"normAfter", after},
            {"contractive", after <= before},
            {"pass", pass}},
           pass};
  r.csv_matrix = px;
  return r;
}

report diag_embed_cmd(const run_config& c, level_t N, level_t n)
{
  if (c.input.empty())
    throw invalid_argument("a vector input is required (--input)");
  const auto xi   = rational_sequence_from_json(parse_json_text(read_text(c.input), c.input), c.input);
  const index_t T = std::max<index_t>(T_or(c, 0), xi.support_end());
  const auto phi  = diag_embed(xi, T).to_matrix();
  const rational lhs = embedded_norm(xi, N, n);
  const rational rhs = matrix_norm_exact(phi, {weight_kind::A}, N, n, norm_p::one);
  const bool pass    = lhs == rhs;
  return {{{"N", N}, {"n", n}, {"T", T}, {"norm", to_string(lhs)}, {"matrixNorm", to_string(rhs)}, {"pass", pass}},
          pass};
}

report diag_invert_cmd(const run_config& c, const std::string& literal)
{
  if (literal.empty() && !c.input.empty() && !ends_with(c.input, ".env")) {
    // A finite diagonal given as an exact vector.
    const auto xi   = rational_sequence_from_json(parse_json_text(read_text(c.input), c.input), c.input);
    const index_t T = std::max<index_t>(T_or(c, 0), xi.support_end());
    const auto res  = diag_invert(xi, T);
    if (const auto* no = std::get_if<not_invertible>(&res))
      return {{{"kind", "not_invertible"}, {"index", no->index}}, true};
    basic_sequence<rational> inv;
    const auto& m = std::get<diag_inverse<rational>>(res).inverse;
    for (index_t j = 1; j <= T; ++j)
      inv.set(j, m(j, j));
    return {{{"kind", "inverse"}, {"inverse", to_json(inv)}}, true};
  }
  const auto x   = envelope_arg(literal, c);
  const auto res = diag_invert(x);
  if (const auto* ok = std::get_if<envelope_inverse>(&res))
    return {{{"kind", "inverse"},
             {"inverse", to_literal(ok->inverse)},
             {"inverseCertificate", to_json(membership_result(ok->inverse_certificate))},
             {"elementCertificate", to_json(membership_result(ok->element_certificate))},
             {"jointWitness", to_string(ok->joint)}},
            true};
  const auto& no = std::get<not_invertible_in_algebra>(res);
  return {{{"kind", "not_invertible_in_algebra"}, {"refutation", to_json(membership_result(no.reason))}}, true};
}

report merge_cmd(const run_config& c, const std::string& other)
{
  const matrix x = read_matrix(c.input);
  const matrix y = read_matrix(other);
  const auto [m1, m2] = merge_projection(x, y);
  const auto again    = merge_projection(m1, m2);
  const bool idem     = again.first == m1 && again.second == m2;
  report r{{{"dim", x.dim()}, {"merged", to_json(m1)}, {"idempotent", idem}, {"pass", idem}}, idem};
  r.csv_matrix = m1;
  return r;
}

// ---------------------------------------------------------------------------
// interpolation, demo, suite
// ---------------------------------------------------------------------------

json params_json(const interp_params& p)
{
  return {{"N", p.N},           {"M", p.M}, {"K", p.K}, {"n", p.n}, {"m", p.m}, {"k", p.k},
          {"theta0", to_string(p.theta0)}, {"theta", to_string(p.theta)}, {"C", p.C}};
}

report interp_verify(const run_config& c, level_t N, level_t K, level_t m, const std::string& theta)
{
  const auto p   = choose_params(N, K, m, parse_rational(theta));
  const auto rep = verify_estimate(p, T_or(c, 10000));
  return {{{"params", params_json(p)},
           {"T", rep.T},
           {"maxRatio", rep.max_ratio},
           {"argmax", json::array({rep.arg_i, rep.arg_j})},
           {"factorizationError", rep.factorization_error},
           {"pass", rep.pass}},
          rep.pass};
}

report interp_probe(level_t N, level_t M, level_t K, const std::string& theta)
{
  const auto pr = small_theta_probe(N, M, K, parse_rational(theta));
  json sizes    = json::array();
  for (auto s : pr.sizes)
    sizes.push_back(s);
  return {{{"params", {{"N", N}, {"M", M}, {"K", K}, {"theta", to_string(pr.theta)}}},
           {"ray", "(1,t)"},
           {"exponent", to_string(pr.exponent)},
           {"sizes", sizes},
           {"slope", pr.slope},
           {"pass", pr.pass}},
          pr.pass};
}

report demo_nonq(index_t k, level_t N)
{
  const auto r = q_algebra_probe(k, N);
  return {{{"k", k},
           {"N", N},
           {"seminorm", to_double(r.seminorm)},
           {"seminormExact", to_string(r.seminorm)},
           {"singularWitness", "e_" + std::to_string(r.singular_witness)},
           {"annihilated", r.singular},
           {"pass", r.singular}},
          r.singular};
}

report suite_cmd(const run_config& c)
{
  json doc        = run_suite(c.seed);
  const bool pass = doc["pass"].get<bool>();
  return {doc, pass};
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

void flatten(const json& j, const std::string& prefix, std::string& out)
{
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k)
      flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
  } else {
    std::string v = emit_report(j, 0);
    v.pop_back();
    out += prefix + " = " + v + "\n";
  }
}

void print(const report& r, const std::string& format)
{
  if (format == "json") {
    std::cout << emit_report(r.doc);
  } else if (format == "text") {
    std::string out;
    flatten(r.doc, "", out);
    std::cout << out;
  } else if (format == "csv") {
    if (!r.csv_matrix)
      throw invalid_argument("csv output is only available for matrix-valued commands");
    std::cout << matrix_to_csv(*r.csv_matrix);
  } else {
    throw invalid_argument("--format must be json, text or csv");
  }
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Weighted seminorms, growth envelopes and multiplier algebras of the noncommutative Schwartz space"};
  app.require_subcommand(1);
  app.fallthrough();

  run_config cfg;
  app.add_option("--T", cfg.T, "truncation / grid size (command default when omitted)")->envname("NCS_T");
  app.add_option("--N-max", cfg.N_max, "largest outer level")->envname("NCS_N_MAX")->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "largest inner level")->envname("NCS_n_MAX")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->envname("NCS_SEED")->capture_default_str();
  app.add_option("--tol", cfg.tol, "tolerance override")->envname("NCS_TOL");
  app.add_option("--format", cfg.format, "json | text | csv")->envname("NCS_FORMAT")->capture_default_str();
  app.add_option("--input", cfg.input, "input file (JSON, CSV, or '-' for stdin)")->envname("NCS_INPUT");
  app.add_option("--space", cfg.space, "MS | Ls | Lsprime | S")->envname("NCS_SPACE")->capture_default_str();
  app.add_option("--family", cfg.family, "B | B_prime | A | D | Kinf | SeqS | SeqSprime")
      ->envname("NCS_FAMILY")
      ->capture_default_str();

  std::function<report()> action;

  // weights
  auto* weights = app.add_subcommand("weights", "Koethe weights")->require_subcommand(1);
  index_t wi = 1, wj = 1;
  level_t wN = 0, wn = 0;
  auto* w_eval = weights->add_subcommand("eval", "evaluate one weight");
  w_eval->add_option("--i", wi)->required();
  w_eval->add_option("--j", wj)->default_val(1);
  w_eval->add_option("--N", wN)->default_val(0);
  w_eval->add_option("--n", wn)->default_val(0);
  w_eval->callback([&] { action = [&] { return weights_eval(cfg, wi, wj, wN, wn); }; });
  weights->add_subcommand("check", "monotonicity axioms on a grid")->callback([&] {
    action = [&] { return weights_check(cfg); };
  });
  std::string shift = "inner";
  auto* w_ratios    = weights->add_subcommand("ratios", "compactness ratios against closed forms");
  w_ratios->add_option("--shift", shift, "inner | cross")->capture_default_str();
  w_ratios->callback([&] { action = [&] { return weights_ratios(cfg, shift); }; });
  weights->add_subcommand("nuclearity", "sum of (ij)^-2 against pi^4/36")->callback([&] {
    action = [&] { return weights_nuclearity(cfg); };
  });

  // norms
  auto* norm = app.add_subcommand("norm", "weighted norms and seminorms")->require_subcommand(1);
  level_t nN = 0, nn = 0;
  int sn     = 0;
  std::string np = "inf", vectors;
  auto* n_mat    = norm->add_subcommand("matrix", "weighted entrywise norm of a matrix");
  n_mat->add_option("--N", nN)->default_val(0);
  n_mat->add_option("--n", nn)->default_val(0);
  n_mat->add_option("--p", np, "1 | 2 | inf")->capture_default_str();
  n_mat->callback([&] { action = [&] { return norm_matrix(cfg, nN, nn, np); }; });
  auto* n_semi = norm->add_subcommand("seminorm", "p_{n,B} and q_{n,B} over a finite bounded set");
  n_semi->add_option("--vectors", vectors, "JSON {\"vectors\": [...]}")->required();
  n_semi->add_option("--n", sn)->default_val(0);
  n_semi->callback([&] { action = [&] { return norm_seminorm(cfg, vectors, sn); }; });

  // membership
  auto* member = app.add_subcommand("member", "envelope membership")->require_subcommand(1);
  std::string envelope, path;
  level_t mN = 0, mn = 0;
  auto* m_dec = member->add_subcommand("decide", "certificate or refutation");
  m_dec->add_option("--envelope", envelope, "envelope literal");
  m_dec->callback([&] { action = [&] { return member_decide(cfg, envelope); }; });
  auto* m_or = member->add_subcommand("oracle", "numeric growth oracle");
  m_or->add_option("--envelope", envelope, "envelope literal");
  m_or->add_option("--N", mN)->default_val(0);
  m_or->add_option("--n", mn)->default_val(0);
  m_or->add_option("--ray", path, "(t,1) | (1,t) | (t,t) | (t,t+d); whole grid when omitted");
  m_or->callback([&] { action = [&] { return member_oracle(cfg, envelope, mN, mn, path); }; });

  // centralizers
  auto* cent = app.add_subcommand("centralizer", "double centralizers")->require_subcommand(1);
  int ccount = 50;
  for (const char* name : {"law", "roundtrip", "algebra"}) {
    auto* sub = cent->add_subcommand(name);
    sub->add_option("--count", ccount, "number of random samples")->capture_default_str();
    const std::string which = name;
    sub->callback([&, which] {
      action = [&, which] {
        if (which == "law")
          return centralizer_law(cfg, ccount);
        if (which == "roundtrip")
          return centralizer_roundtrip(cfg, ccount);
        return centralizer_algebra(cfg, ccount);
      };
    });
  }

  // diagonal
  auto* diag = app.add_subcommand("diag", "diagonal subalgebra")->require_subcommand(1);
  level_t dN = 0, dn = 0;
  auto* d_proj = diag->add_subcommand("project", "diagonal projection of a matrix");
  d_proj->add_option("--N", dN)->default_val(0);
  d_proj->add_option("--n", dn)->default_val(0);
  d_proj->callback([&] { action = [&] { return diag_project_cmd(cfg, dN, dn); }; });
  auto* d_emb = diag->add_subcommand("embed", "embedding of an exact vector and its l1 norm");
  d_emb->add_option("--N", dN)->default_val(0);
  d_emb->add_option("--n", dn)->default_val(0);
  d_emb->callback([&] { action = [&] { return diag_embed_cmd(cfg, dN, dn); }; });
  auto* d_inv = diag->add_subcommand("invert", "inverse of a diagonal (vector or band=0 envelope)");
  d_inv->add_option("--envelope", envelope, "envelope literal");
  d_inv->callback([&] { action = [&] { return diag_invert_cmd(cfg, envelope); }; });

  // merge
  std::string other;
  auto* merge = app.add_subcommand("merge", "merge projection onto equal pairs");
  merge->add_option("--other", other, "second matrix")->required();
  merge->callback([&] { action = [&] { return merge_cmd(cfg, other); }; });

  // interpolation
  auto* interp = app.add_subcommand("interp", "interpolation estimate")->require_subcommand(1);
  level_t iN = 0, iK = 3, im = 5, iM = 1;
  std::string theta = "3/4";
  auto* i_ver       = interp->add_subcommand("verify", "grid verification for chosen parameters");
  i_ver->add_option("--N", iN)->capture_default_str();
  i_ver->add_option("--K", iK)->capture_default_str();
  i_ver->add_option("--m", im)->capture_default_str();
  i_ver->add_option("--theta", theta)->capture_default_str();
  i_ver->callback([&] { action = [&] { return interp_verify(cfg, iN, iK, im, theta); }; });
  auto* i_probe = interp->add_subcommand("probe", "small-theta probe along (1,t)");
  i_probe->add_option("--N", iN)->capture_default_str();
  i_probe->add_option("--M", iM)->capture_default_str();
  i_probe->add_option("--K", iK)->capture_default_str();
  i_probe->add_option("--theta", theta)->required();
  i_probe->callback([&] { action = [&] { return interp_probe(iN, iM, iK, theta); }; });

  // demo
  auto* demo = app.add_subcommand("demo", "demonstrations")->require_subcommand(1);
  index_t dk = 100;
  level_t qN = 0;
  auto* d_nonq = demo->add_subcommand("nonq", "the identity is a limit of non-invertibles");
  d_nonq->add_option("--k", dk)->capture_default_str();
  d_nonq->add_option("--N", qN)->capture_default_str();
  d_nonq->callback([&] { action = [&] { return demo_nonq(dk, qN); }; });

  // suite
  app.add_subcommand("suite", "full acceptance battery")->callback([&] {
    action = [&] { return suite_cmd(cfg); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const report r = action();
    print(r, cfg.format);
    return r.pass ? 0 : 1;
  } catch (const ncs::error& e) {
    std::cerr << emit_report(json{{"error", e.what()}});
    return 2;
  } catch (const std::exception& e) {
    std::cerr << emit_report(json{{"error", e.what()}});
    return 2;
  }
}
