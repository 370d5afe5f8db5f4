#pragma once

// msrlab command-line front end. Exit codes: 0 success, 1 property violated,
// 2 usage or format error.

#include <msrlab/serialize.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <ostream>
#include <string>
#include <vector>

namespace msrlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Failures that describe the mathematics rather than the input.
inline bool is_violation(ErrorKind k) {
  switch (k) {
    case ErrorKind::SchemeInvalid:
    case ErrorKind::NoSchemeExists:
    case ErrorKind::BudgetExhausted:
    case ErrorKind::IndependenceFailure:
    case ErrorKind::ConditionsViolated:
    case ErrorKind::BoundViolated:
    case ErrorKind::InconsistentNodeData:
    case ErrorKind::HypothesisViolated:
    case ErrorKind::PairsNotComplementary:
    case ErrorKind::SingularEncodingMatrix:
      return true;
    default:
      return false;
  }
}

inline std::string subspace_text(const Subspace& s) {
  auto row = [&](std::size_t r) {
    std::string t;
    for (std::size_t c = 0; c < s.ambient(); ++c) t += (c ? "," : "") + std::to_string(s.basis()(r, c));
    return t;
  };
  if (s.dim() == 0) return "{0}";
  if (s.dim() == 1) return "span(" + row(0) + ")";
  std::string t = "span(";
  for (std::size_t r = 0; r < s.dim(); ++r) t += (r ? ",(" : "(") + row(r) + ")";
  return t + ")";
}

inline std::string index_text(const std::vector<std::size_t>& idx) {
  std::string t = "{";
  for (std::size_t x = 0; x < idx.size(); ++x) t += (x ? "," : "") + std::to_string(idx[x] + 1);
  return t + "}";
}

/// "1:2,3:4" -> zero-based pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "pair '" + item + "' must look like a:b");
    try {
      const auto a = std::stoul(item.substr(0, colon)), b = std::stoul(item.substr(colon + 1));
      if (a == 0 || b == 0) throw Error(ErrorKind::ParseError, "indices are 1-based");
      out.emplace_back(a - 1, b - 1);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad pair '" + item + "'");
    }
  }
  return out;
}

/// "1,2;3,4" -> zero-based blocks.
inline std::vector<std::vector<std::size_t>> parse_partition(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  std::stringstream ss(text);
  std::string block;
  while (std::getline(ss, block, ';')) {
    std::vector<std::size_t> b;
    std::stringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      try {
        const auto v = std::stoul(item);
        if (v == 0) throw Error(ErrorKind::ParseError, "indices are 1-based");
        b.push_back(v - 1);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "bad index '" + item + "'");
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

inline std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad integer '" + item + "'");
    }
  }
  return out;
}

namespace detail {

struct CliState {
  bool json = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;
  std::size_t fail = 0;  // 1-based, 0 = all
  std::string data_file;
  std::size_t anchor = 0;
  std::string partition;
  std::string pairs;
  std::string out_file;
  std::string code_file, scheme_file, system_file;
  std::string family;
  std::uint64_t ell = 0, r = 0, n = 0, p = 2, m = 1;
  std::string reduction;
  bool randomized = false, exhaustive = false, no_symmetry = false;
};

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
  f << to_text(j);
}

inline std::optional<std::size_t> failed_node(const CliState& st, const ArrayCode& code) {
  if (st.fail == 0) return std::nullopt;
  if (st.fail > code.params().k) throw Error(ErrorKind::IndexOutOfRange, "--fail must name a systematic node 1.." + std::to_string(code.params().k));
  return st.fail - 1;
}

inline int cmd_verify_mds(const CliState& st, std::ostream& out) {
  const auto code = code_from_json(read_json_file(st.code_file));
  const auto rep = verify_mds(code);
  if (st.json) {
    out << to_text(mds_report_json(rep));
  } else {
    out << "MDS: " << rep.subsets_checked - rep.failing.size() << "/" << rep.subsets_checked << " subsets invertible\n";
    for (const auto& s : rep.failing) out << "  singular: " << index_text(s) << "\n";
  }
  return rep.mds ? kExitOk : kExitViolation;
}

inline int cmd_verify_repair(const CliState& st, std::ostream& out) {
  const auto code = code_from_json(read_json_file(st.code_file));
  const auto scheme = scheme_from_json(read_json_file(st.scheme_file), code);
  std::vector<std::size_t> nodes;
  if (auto f = failed_node(st, code)) {
    nodes.push_back(*f);
  } else {
    for (const auto& [i, nr] : scheme.nodes()) nodes.push_back(i);
  }
  bool all = true;
  Json checks = Json::array();
  for (auto i : nodes) {
    if (!scheme.has(i)) throw Error(ErrorKind::ParseError, "scheme has no entry for node " + std::to_string(i + 1));
    const auto chk = verify_scheme(code, scheme, i);
    all = all && chk.ok;
    checks.push_back(scheme_check_json(i, chk));
    if (!st.json) {
      out << "node " << i + 1 << ": " << (chk.ok ? "repairable" : "violated") << "\n";
      for (const auto& v : chk.violations) {
        if (v.kind == SchemeViolation::Kind::Alignment)
          out << "  helper " << v.helper + 1 << " misaligned at parity " << v.parity + 1 << "\n";
        else
          out << "  parity images span dimension " << v.sum_dim << " of " << code.params().ell << "\n";
      }
    }
  }
  if (st.json) {
    Json j = report_header("verify-repair");
    j["ok"] = all;
    j["nodes"] = std::move(checks);
    out << to_text(j);
  }
  return all ? kExitOk : kExitViolation;
}

inline int cmd_repair(const CliState& st, std::ostream& out) {
  const auto code = code_from_json(read_json_file(st.code_file));
  const auto scheme = scheme_from_json(read_json_file(st.scheme_file), code);
  const auto fail = failed_node(st, code);
  if (!fail) throw Error(ErrorKind::ParseError, "repair needs --fail <node>");
  DataFill fill;
  if (!st.data_file.empty()) {
    fill = data_from_json(read_json_file(st.data_file), code);
  } else {
    std::mt19937_64 rng(st.seed);
    fill = random_fill(code, rng);
  }
  const auto nodes = encode(code, fill);
  const auto tr = execute_repair(code, scheme, *fail, nodes);
  const bool exact = tr.recovered == nodes[*fail];
  if (st.json) {
    Json j = transcript_json(tr);
    j["exact"] = exact;
    j["bandwidth"] = bandwidth_of(code.params());
    out << to_text(j);
  } else {
    out << "node " << *fail + 1 << " recovered from " << tr.symbols << " symbols (optimal " << bandwidth_of(code.params()) << ")\n";
    for (std::size_t h = 0; h < tr.transmitted.size(); ++h) {
      if (!tr.transmitted[h]) continue;
      out << "  node " << h + 1 << " sends " << vector_to_json(*tr.transmitted[h]).dump() << "\n";
    }
    out << "recovered " << vector_to_json(tr.recovered).dump() << (exact ? ", matches stored content\n" : ", MISMATCH\n");
  }
  return exact ? kExitOk : kExitViolation;
}

inline int cmd_search_scheme(const CliState& st, std::ostream& out) {
  const auto code = code_from_json(read_json_file(st.code_file));
  SchemeSearchOptions opt;
  opt.failed = failed_node(st, code);
  opt.seed = st.seed;
  opt.budget = st.budget;
  if (st.randomized) opt.strategy = SearchStrategy::Randomized;
  if (st.exhaustive) opt.strategy = SearchStrategy::Exhaustive;
  const auto res = search_scheme(code, opt);
  if (!st.out_file.empty()) write_file(st.out_file, scheme_to_json(res.scheme));
  if (st.json) {
    out << to_text(scheme_search_json(res));
    return kExitOk;
  }
  const auto& p = code.params();
  for (const auto& ns : res.nodes) {
    out << "node " << ns.failed + 1 << ": " << ns.solutions.size() << (ns.solutions.size() == 1 ? " solution" : " solutions")
        << (ns.exhaustive ? " (exhaustive)" : " (first found)") << ", bandwidth " << bandwidth_of(p) << " symbols\n";
    for (const auto& sol : ns.solutions) {
      out << " ";
      for (std::size_t t = 0; t < sol.size(); ++t) out << " S" << ns.failed + 1 << "," << p.k + t + 1 << " = " << subspace_text(sol[t]);
      out << "\n";
    }
  }
  return kExitOk;
}

inline Field cli_field(const CliState& st) {
  std::optional<std::vector<std::uint64_t>> red;
  if (!st.reduction.empty()) red = parse_u64_list(st.reduction);
  try {
    return Field::make(st.p, static_cast<std::uint32_t>(st.m), red);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline int cmd_search_maxk(const CliState& st, std::ostream& out) {
  SearchConfig cfg;
  cfg.ell = st.ell;
  cfg.r = st.r;
  cfg.field = cli_field(st);
  cfg.seed = st.seed;
  cfg.budget = st.budget;
  cfg.symmetry_fix = !st.no_symmetry;
  if (st.randomized) cfg.strategy = SearchStrategy::Randomized;
  if (st.exhaustive) cfg.strategy = SearchStrategy::Exhaustive;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  const auto res = search_max_k(cfg);
  if (!st.out_file.empty()) write_file(st.out_file, system_to_json(res.witness));
  const auto rep = bound_report(cfg.ell, cfg.r);
  std::string bound_note = "within bounds";
  int code = kExitOk;
  try {
    consistency_assert(res.kmax, rep, KCount::SystemSize, system_to_json(res.witness).dump());
  } catch (const Error& e) {
    bound_note = e.what();
    code = kExitViolation;
  }
  if (st.json) {
    Json j = search_result_json(res);
    j["bounds"] = bound_report_json(rep);
    j["consistent"] = code == kExitOk;
    out << to_text(j);
  } else {
    out << "GF(" << cfg.field.order() << "), ell = " << cfg.ell << ", r = " << cfg.r << ": kmax = " << res.kmax
        << (res.exhaustive ? " (exhaustive" : " (lower bound, non-exhaustive") << ", " << res.expansions << " expansions)\n";
    out << "code systematic nodes k = " << res.kmax + 1 << ", " << bound_note << "\n";
    for (std::size_t i = 0; i < res.witness.size(); ++i)
      out << "  pair " << i + 1 << ": S = " << subspace_text(res.witness.s(i)) << ", Phi = " << matrix_to_json(res.witness.phi(i)).dump()
          << "\n";
  }
  return code;
}

inline RepairScheme scheme_or_search(const CliState& st, const ArrayCode& code) {
  if (!st.scheme_file.empty()) return scheme_from_json(read_json_file(st.scheme_file), code);
  SchemeSearchOptions opt;
  opt.seed = st.seed;
  opt.budget = st.budget;
  return search_scheme(code, opt).scheme;
}

inline int cmd_reduce_theta(const CliState& st, std::ostream& out) {
  const auto code = code_from_json(read_json_file(st.code_file));
  std::optional<std::size_t> anchor;
  if (st.anchor) {
    if (st.anchor > code.params().k) throw Error(ErrorKind::IndexOutOfRange, "--anchor must name a systematic node");
    anchor = st.anchor - 1;
  }
  const auto scheme = scheme_or_search(st, code);
  const auto red = theta_reduce(code, scheme, anchor);
  if (!st.out_file.empty()) write_file(st.out_file, system_to_json(red.system));
  std::vector<Matrix> fam{Matrix::identity(code.field(), code.params().ell)};
  for (const auto& pp : red.system.pairs) fam.push_back(pp.phi);
  const auto rk = family_rank(fam);
  if (st.json) {
    Json j = theta_json(red);
    j["conditions"] = condition_check_json(check_sc(red.system));
    j["identity_family_rank"] = rk;
    out << to_text(j);
  } else {
    out << red.system.size() << " pairs from anchor node " << red.anchor + 1 << ", conditions hold\n";
    for (std::size_t x = 0; x < red.system.size(); ++x)
      out << "  Theta" << red.labels[x] + 1 << " = " << matrix_to_json(red.system.phi(x)).dump()
          << ", S = " << subspace_text(red.system.s(x)) << "\n";
    out << "identity family: " << fam.size() << " matrices, rank " << rk << " (ell^2 = " << code.params().ell * code.params().ell
        << ")\n";
  }
  return kExitOk;
}

inline int cmd_certify(const CliState& st, std::ostream& out) {
  const auto sys = system_from_json(read_json_file(st.system_file));
  const auto part = st.partition.empty() ? std::vector<std::vector<std::size_t>>{} : parse_partition(st.partition);
  const auto prs = st.pairs.empty() ? std::vector<std::pair<std::size_t, std::size_t>>{} : parse_pairs(st.pairs);
  auto two_blocks = [&]() {
    if (part.size() != 2) throw Error(ErrorKind::ParseError, "T needs --partition with two blocks, e.g. 1,2;3,4");
  };
  const std::string fam_name = st.family;

  if (fam_name == "sumdim") {
    if (part.size() != 1) throw Error(ErrorKind::ParseError, "sumdim needs --partition with one block");
    const auto chk = sum_dim_check(sys, part[0]);
    if (st.json) {
      Json j = report_header("certify");
      j["indices"] = index_list(part[0]);
      j["dim"] = chk.dim;
      j["bound"] = chk.bound;
      j["ok"] = chk.ok;
      out << to_text(j);
    } else {
      out << "dim " << index_text(part[0]) << " sum = " << chk.dim << ", lower bound " << chk.bound << (chk.ok ? ", ok\n" : ", VIOLATED\n");
    }
    return chk.ok ? kExitOk : kExitViolation;
  }

  CertificateFamily fam{FamilyKind::T, {}, 0};
  std::optional<Corollary1Check> cor;
  if (fam_name == "t") {
    two_blocks();
    fam = build_T(sys, part[0], part[1]);
    cor = check_corollary1(sys, fam);
  } else if (fam_name == "upsilon") {
    fam = build_upsilon(sys, prs);
  } else if (fam_name == "r") {
    CertificateFamily t{FamilyKind::T, {}, 0};
    if (!part.empty()) {
      two_blocks();
      t = build_T(sys, part[0], part[1]);
    }
    fam = build_R(sys, prs, t);
  } else if (fam_name == "lambda") {
    fam = build_lambda(sys, part);
  } else if (fam_name == "gamma") {
    fam = build_gamma(sys, part);
  } else if (fam_name == "identity") {
    fam = build_identity_theta(sys);
  } else {
    throw Error(ErrorKind::ParseError, "unknown family '" + fam_name + "'");
  }
  const auto rk = fam.rank();
  const bool indep = rk == fam.members.size();
  if (st.json) {
    Json j = family_report_json(fam);
    if (cor) {
      j["hypothesis"] = cor->hypothesis;
      j["holds"] = cor->holds;
      if (cor->witness) {
        j["witness"] = Json::array({cor->witness->first + 1, cor->witness->second + 1});
        j["witness_complementary"] = cor->witness_complementary;
      }
    }
    out << to_text(j);
  } else {
    out << fam.members.size() << " matrices, rank " << rk << ", " << (indep ? "independent" : "dependent") << "\n";
    if (cor) {
      out << "pairwise intersections " << (cor->hypothesis ? "all nontrivial" : "include a complementary pair")
          << (cor->holds ? ", consistent\n" : ", INCONSISTENT\n");
      if (cor->witness)
        out << "dependent member (" << cor->witness->first + 1 << "," << cor->witness->second + 1 << ") has "
            << (cor->witness_complementary ? "complementary" : "intersecting") << " subspaces\n";
    }
  }
  if (cor) return cor->holds ? kExitOk : kExitViolation;
  return indep ? kExitOk : kExitViolation;
}

inline int cmd_bounds(const CliState& st, std::ostream& out) {
  BoundReport rep;
  try {
    rep = bound_report(st.ell, st.r, st.n ? std::optional<std::uint64_t>(st.n) : std::nullopt);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (st.json) {
    out << to_text(bound_report_json(rep));
    return kExitOk;
  }
  auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string("n/a"); };
  out << "ell = " << rep.ell << ", r = " << rep.r << "\n";
  out << "quadratic: " << rep.quadratic << "\n";
  out << "linear_r2: " << opt(rep.linear_r2) << (rep.linear_r2 ? " (helper-independent pairs)" : "") << "\n";
  out << "logsq: " << opt(rep.logsq) << "\n";
  if (rep.known_achievable) {
    std::ostringstream ka;
    ka << *rep.known_achievable;
    out << "known_achievable: " << ka.str() << "\n";
  } else {
    out << "known_achievable: n/a\n";
  }
  out << "bandwidth: " << opt(rep.bandwidth) << "\n";
  return kExitOk;
}

}  // namespace detail

/// Runs one msrlab command; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"msrlab: MDS array codes, optimal repair and sub-packetization bounds"};
  app.require_subcommand(1);
  detail::CliState st;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", st.json, "Machine-readable output");
    sub->add_option("--seed", st.seed, "Random seed");
    sub->add_option("--budget", st.budget, "Search budget in node expansions")->check(CLI::PositiveNumber);
  };

  auto* mds = app.add_subcommand("verify-mds", "Check that every k nodes determine the data");
  mds->add_option("code", st.code_file, "Code file")->required();
  common(mds);

  auto* vr = app.add_subcommand("verify-repair", "Check a repair scheme against the subspace conditions");
  vr->add_option("code", st.code_file, "Code file")->required();
  vr->add_option("scheme", st.scheme_file, "Scheme file")->required();
  vr->add_option("--fail", st.fail, "Failed systematic node (1-based)");
  common(vr);

  auto* rp = app.add_subcommand("repair", "Run a repair on concrete data");
  rp->add_option("code", st.code_file, "Code file")->required();
  rp->add_option("scheme", st.scheme_file, "Scheme file")->required();
  rp->add_option("--fail", st.fail, "Failed systematic node (1-based)")->required();
  rp->add_option("--data", st.data_file, "Data file (random fill from --seed otherwise)");
  common(rp);

  auto* ss = app.add_subcommand("search-scheme", "Search repair subspaces for a code");
  ss->add_option("code", st.code_file, "Code file")->required();
  ss->add_option("--fail", st.fail, "Only this systematic node (1-based)");
  ss->add_option("--out", st.out_file, "Write the found scheme here");
  ss->add_flag("--randomized", st.randomized, "Random sampling instead of enumeration");
  ss->add_flag("--exhaustive", st.exhaustive, "Force full enumeration");
  common(ss);

  auto* sk = app.add_subcommand("search-maxk", "Largest helper-independent system over a small field");
  sk->add_option("--ell", st.ell, "Sub-packetization")->required();
  sk->add_option("--r", st.r, "Parity count")->required();
  sk->add_option("--p", st.p, "Field characteristic");
  sk->add_option("--m", st.m, "Extension degree");
  sk->add_option("--reduction", st.reduction, "Reduction polynomial coefficients, low to high, e.g. 1,1,1");
  sk->add_option("--out", st.out_file, "Write the witness system here");
  sk->add_flag("--randomized", st.randomized, "Randomized greedy lower bound");
  sk->add_flag("--exhaustive", st.exhaustive, "Force exhaustive search");
  sk->add_flag("--no-symmetry", st.no_symmetry, "Disable the first-subspace symmetry fix");
  common(sk);

  auto* rt = app.add_subcommand("reduce-theta", "Derive the operator system of a two-parity code");
  rt->add_option("code", st.code_file, "Code file")->required();
  rt->add_option("scheme", st.scheme_file, "Scheme file (searched when omitted)");
  rt->add_option("--anchor", st.anchor, "Anchor systematic node (1-based, default last)");
  rt->add_option("--out", st.out_file, "Write the system here");
  common(rt);

  auto* ce = app.add_subcommand("certify", "Build an independence family and check it");
  ce->add_option("system", st.system_file, "System file")->required();
  ce->add_option("--family", st.family, "t, upsilon, r, lambda, gamma, identity or sumdim")
      ->required()
      ->transform(CLI::IsMember({"t", "upsilon", "r", "lambda", "gamma", "identity", "sumdim"}, CLI::ignore_case));
  ce->add_option("--pairs", st.pairs, "Complementary pairs, e.g. 1:2,3:4");
  ce->add_option("--partition", st.partition, "Index blocks, e.g. 1,2;3,4");
  common(ce);

  auto* bd = app.add_subcommand("bounds", "Evaluate the sub-packetization bounds");
  bd->add_option("--ell", st.ell, "Sub-packetization")->required();
  bd->add_option("--r", st.r, "Parity count")->required();
  bd->add_option("--n", st.n, "Node count, for the repair bandwidth");
  common(bd);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*mds) return detail::cmd_verify_mds(st, out);
    if (*vr) return detail::cmd_verify_repair(st, out);
    if (*rp) return detail::cmd_repair(st, out);
    if (*ss) return detail::cmd_search_scheme(st, out);
    if (*sk) return detail::cmd_search_maxk(st, out);
    if (*rt) return detail::cmd_reduce_theta(st, out);
    if (*ce) return detail::cmd_certify(st, out);
    if (*bd) return detail::cmd_bounds(st, out);
  } catch (const Error& e) {
    const bool violation = is_violation(e.kind());
    if (st.json) {
      Json j = report_header("error");
      j["kind"] = std::string(to_string(e.kind()));
      j["message"] = e.what();
      if (!e.payload().empty()) {
        try {
          j["counterexample"] = Json::parse(e.payload());
        } catch (const Json::exception&) {
          j["counterexample"] = e.payload();
        }
      }
      out << to_text(j);
    } else {
      (violation ? out : err) << e.what() << "\n";
      if (violation && !e.payload().empty()) out << e.payload() << "\n";
    }
    return violation ? kExitViolation : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace msrlab
