#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkchev/chevalley.hpp"

namespace qkchev::cli {

struct JobSpec {
  std::string type = "A";
  int rank = 1;
  int k = 1;
  std::string x = "all";
  std::string mode = "expand";
  std::uint64_t order_seed = 0;
  std::string format = "text";
  std::string side = "qk";
  int jobs = 1;
};

struct UsageError : Error {
  using Error::Error;
};

/// Parses argv into a JobSpec. Returns nullopt after printing help.
inline std::optional<JobSpec> parse_args(int argc, const char* const* argv, std::ostream& out) {
  JobSpec s;
  CLI::App app{"Quantum K-theory Chevalley formula for minuscule weights"};
  app.add_option("--type", s.type, "Cartan family: A, B, D or E");
  app.add_option("--rank", s.rank, "rank n");
  app.add_option("--k", s.k, "minuscule node");
  app.add_option("--x", s.x, "element of W^J as a word (\"1 4 3\"), or \"all\"");
  app.add_option("--mode", s.mode, "expand | verify | cancel-report | appendix-demo")
      ->check(CLI::IsMember({"expand", "verify", "cancel-report", "appendix-demo"}));
  app.add_option("--order-seed", s.order_seed, "seed of the J-compatible reflection order (0 = lex-least)");
  app.add_option("--format", s.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--side", s.side, "qk | character")->check(CLI::IsMember({"qk", "character"}));
  app.add_option("--jobs", s.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return s;
}

/// Applies f to every index on `jobs` threads; results keep input order.
template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& f) {
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int t = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::vector<std::string> diff_expansions(const SchubertExpansion& a, const SchubertExpansion& b) {
  std::vector<std::string> out;
  std::map<TermKey, int> keys;
  for (const auto& [k, c] : a.terms) keys[k] = 0;
  for (const auto& [k, c] : b.terms) keys[k] = 0;
  for (const auto& [k, unused] : keys) {
    int ca = a.coeff(k.v, k.m), cb = b.coeff(k.v, k.m);
    if (ca != cb) {
      out.push_back("(" + Chevalley::display(format_word(k.v)) + ", m=" + std::to_string(k.m) +
                    "): closed " + std::to_string(ca) + " vs oracle " + std::to_string(cb));
    }
  }
  return out;
}

inline std::vector<WeylElem> requested_elements(const Chevalley& ch, const std::string& x) {
  if (x == "all") return ch.WJ();
  WeylElem w = ch.weyl().parse(x);
  ch.require_WJ(w);
  return {w};
}

inline std::string header(const Chevalley& ch) {
  return ch.roots().type().name() + ", k=" + std::to_string(ch.k()) + ", floor(s_theta) = " +
         schubert_label(ch.weyl().reduced_word(ch.s_theta_min()));
}

inline int run_expand(const JobSpec& s, const Chevalley& ch, std::ostream& out) {
  auto xs = requested_elements(ch, s.x);
  auto ord = ch.order(s.order_seed);
  auto exps = parallel_map<SchubertExpansion>(xs.size(), s.jobs, [&](std::size_t i) {
    auto e = ch.closed_formula(xs[i], ord);
    e.side = s.side == "qk" ? Side::QK : Side::Character;
    return e;
  });
  if (s.format == "json") {
    if (s.x == "all") {
      auto arr = nlohmann::json::array();
      for (const auto& e : exps) arr.push_back(to_json(e));
      out << arr.dump(2) << '\n';
    } else {
      out << to_json(exps.front()).dump(2) << '\n';
    }
    return 0;
  }
  out << "# " << header(ch) << '\n';
  for (const auto& e : exps) out << to_qk_product_string(e) << '\n';
  return 0;
}

inline int run_verify(const JobSpec& s, const Chevalley& ch, std::ostream& out) {
  auto xs = requested_elements(ch, s.x);
  auto ord = ch.order(s.order_seed);
  auto diffs = parallel_map<std::vector<std::string>>(xs.size(), s.jobs, [&](std::size_t i) {
    return diff_expansions(ch.closed_formula(xs[i], ord), ch.oracle_expansion(xs[i], ord));
  });
  std::size_t bad = 0;
  for (const auto& d : diffs) bad += d.empty() ? 0 : 1;
  if (s.format == "json") {
    nlohmann::json j;
    j["type"] = ch.roots().type().name();
    j["k"] = ch.k();
    j["checked"] = xs.size();
    j["mismatches"] = nlohmann::json::array();
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!diffs[i].empty()) j["mismatches"].push_back({{"x", ch.weyl().word_string(xs[i])}, {"diff", diffs[i]}});
    j["ok"] = bad == 0;
    out << j.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (const auto& line : diffs[i]) out << "mismatch x=" << schubert_label(ch.weyl().reduced_word(xs[i])) << ": " << line << '\n';
    }
    out << header(ch) << ": " << xs.size() - bad << "/" << xs.size() << " elements agree with the path-sum oracle\n";
  }
  return bad == 0 ? 0 : 1;
}

inline int run_cancel_report(const JobSpec& s, const Chevalley& ch, std::ostream& out) {
  auto xs = requested_elements(ch, s.x);
  auto ord = ch.order(s.order_seed);
  auto reps = parallel_map<CancellationReport>(xs.size(), s.jobs,
                                               [&](std::size_t i) { return ch.cancellation_report(xs[i], ord); });
  bool ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.ok(); });
  if (s.format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& r : reps) {
      nlohmann::json j{{"x", format_word(r.x)}, {"above_s_theta", r.above_s_theta}, {"violations", r.violations}};
      j["cosets"] = nlohmann::json::array();
      for (const auto& row : r.rows) {
        nlohmann::json c{{"v", format_word(row.v)}, {"count", row.count}, {"signed_sum", row.signed_sum}};
        if (r.type_b) c["h_count"] = row.h_count;
        j["cosets"].push_back(c);
      }
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "# " << header(ch) << '\n';
    for (const auto& r : reps) {
      out << "x = " << schubert_label(r.x) << (r.above_s_theta ? "  (>= floor(s_theta))" : "") << '\n';
      for (const auto& row : r.rows) {
        out << "  v = " << schubert_label(row.v) << "  count " << row.count;
        if (r.type_b) out << "  H " << row.h_count;
        out << "  signed sum " << row.signed_sum << '\n';
      }
      for (const auto& v : r.violations) out << "  VIOLATION " << v << '\n';
    }
  }
  return ok ? 0 : 1;
}

inline int run_appendix_demo(const JobSpec& s, std::ostream& out) {
  Chevalley ch(LieType::make(Family::A, 6), 3);
  const auto& weyl = ch.weyl();
  WeylElem x = weyl.parse("1 4 3 2 6 5 4 3");
  auto ord = ch.order(s.order_seed);
  auto closed = ch.closed_formula(x, ord);
  auto oracle = ch.oracle_expansion(x, ord);
  if (s.format == "json") {
    auto j = to_json(closed);
    j["oracle_agrees"] = closed.same_terms(oracle);
    j["order_outside_J"] = nlohmann::json::array();
    for (int idx : ord.sequence())
      if (ch.labels_outside_J()[static_cast<std::size_t>(idx)]) j["order_outside_J"].push_back(ch.roots().root(idx).coeffs);
    out << j.dump(2) << '\n';
    return closed.same_terms(oracle) ? 0 : 1;
  }
  out << "Gr(3,7): type A6, k = 3, J = I \\ {3}\n";
  out << "floor(s_theta) = " << schubert_label(weyl.reduced_word(ch.s_theta_min())) << '\n';
  out << "x = " << schubert_label(weyl.reduced_word(x)) << ", x >= floor(s_theta): " << (closed.above_s_theta ? "yes" : "no")
      << '\n';
  out << "reflection order on the roots outside Delta_J:\n  ";
  bool first = true;
  for (int idx : ord.sequence()) {
    if (!ch.labels_outside_J()[static_cast<std::size_t>(idx)]) continue;
    out << (first ? "" : " ⊲ ") << RootSystem::format_root(ch.roots().root(idx).coeffs);
    first = false;
  }
  out << "\ned(BG_x):\n";
  int i = 1;
  for (const auto& [y, sgn] : ch.classical_terms(x, ord))
    out << "  x" << i++ << " = " << schubert_label(weyl.reduced_word(y)) << "  sign " << (sgn > 0 ? "+" : "-") << '\n';
  out << "quantum partners floor(y s_3):\n";
  i = 1;
  for (const auto& [y, p] : ch.quantum_partners(x, ord))
    out << "  floor(x" << i++ << " s3) = " << schubert_label(weyl.reduced_word(p)) << '\n';
  out << to_qk_product_string(closed) << '\n';
  out << to_sk_product_string(closed) << '\n';
  auto diff = diff_expansions(closed, oracle);
  out << "path-sum oracle: " << (diff.empty() ? "agrees" : "DISAGREES") << '\n';
  for (const auto& d : diff) out << "  " << d << '\n';
  return diff.empty() ? 0 : 1;
}

inline int run(const JobSpec& s, std::ostream& out, std::ostream& err) {
  try {
    if (s.mode == "appendix-demo") return run_appendix_demo(s, out);
    Chevalley ch(LieType::parse(s.type, s.rank), s.k);
    if (s.mode == "expand") return run_expand(s, ch, out);
    if (s.mode == "verify") return run_verify(s, ch, out);
    if (s.mode == "cancel-report") return run_cancel_report(s, ch, out);
    err << "error: unknown mode " << s.mode << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

/// Entry point shared by the executable and the tests.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    auto spec = parse_args(argc, argv, out);
    if (!spec) return 0;
    return run(*spec, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qkchev::cli
