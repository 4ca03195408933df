// Copyright 2026 The abpir authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "abpir/appendix.hpp"
#include "abpir/io.hpp"
#include "abpir/kernels.hpp"
#include "abpir/sim.hpp"
#include "abpir/solver.hpp"
#include "abpir/verify.hpp"

namespace {

using abpir::ProblemInstance;
using abpir::Rational;

std::vector<int> parse_demand_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw CLI::ValidationError("-W", "empty demand index");
    out.push_back(std::stoi(part));
  }
  if (out.empty()) throw CLI::ValidationError("-W", "need at least one demand index");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  if (lo > hi) throw CLI::ValidationError("range", "lower bound exceeds upper bound");
  return {lo, hi};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw abpir::Error("cannot open output file " + path);
  out << content;
}

int thread_budget() {
  if (const char* env = std::getenv("ABPIR_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

struct SweepRow {
  ProblemInstance inst;
  Rational lower, upper, baseline, ratio;
  abpir::Comparison comparison = abpir::Comparison::kEqual;
};

int run_sweep(const std::string& n_range, const std::string& k_range, const std::string& d_rule,
              const std::string& out_path) {
  auto [n_lo, n_hi] = parse_range(n_range);
  auto [k_lo, k_hi] = parse_range(k_range);
  if (n_lo < 2) throw CLI::ValidationError("--n-range", "need N >= 2");
  if (k_lo < 1) throw CLI::ValidationError("--k-range", "need K >= 1");
  std::vector<ProblemInstance> instances;
  for (int n = n_lo; n <= n_hi; n++)
    for (int k = k_lo; k <= k_hi; k++)
      for (int d = 1; d <= k; d++) {
        const bool divides = (k % d == 0);
        if (d_rule == "divisors-only" && !divides) continue;
        if (d_rule == "non-divisors-only" && divides) continue;
        instances.emplace_back(n, k, d);
      }

  std::vector<SweepRow> rows(instances.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= instances.size()) return;
      SweepRow& row = rows[i];
      row.inst = instances[i];
      row.lower = abpir::lower_bound(row.inst);
      row.upper = abpir::upper_bound(row.inst);
      row.baseline = abpir::bu_baseline(row.inst).rate;
      row.ratio = row.lower / row.upper;
      row.comparison = abpir::compare_schemes(row.inst);
    }
  };
  const int threads = std::min<int>(thread_budget(), static_cast<int>(instances.size()));
  if (threads > 1) {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; t++) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  } else {
    worker();
  }

  std::ostringstream csv;
  csv << "N,K,D,lower_bound,upper_bound,baseline_rate,ratio,ratio_decimal,comparison\n";
  for (const auto& row : rows) {
    csv << row.inst.servers << "," << row.inst.messages << "," << row.inst.demands << ","
        << row.lower.to_string() << "," << row.upper.to_string() << ","
        << row.baseline.to_string() << "," << row.ratio.to_string() << ","
        << row.ratio.to_decimal(4) << "," << to_string(row.comparison) << "\n";
  }
  write_output(out_path, csv.str());
  return 0;
}

int run_appendix(const std::string& n_range, const std::string& k_range) {
  auto [n_lo, n_hi] = parse_range(n_range);
  auto [k_lo, k_hi] = parse_range(k_range);
  if (n_lo < 2) throw CLI::ValidationError("--n-range", "need N >= 2");
  if (k_lo < 2) throw CLI::ValidationError("--k-range", "need K >= 2");
  bool all_ok = true;
  std::cout << "N,K,identities,signed_sum,sign,ratio_gap_sign,agree\n";
  for (int n = n_lo; n <= n_hi; n++) {
    for (int k = k_lo; k <= k_hi; k++) {
      const auto rep = abpir::check_pair_identities(n, k);
      const Rational sum = abpir::signed_sum(n, k);
      const int expected_sign = (k % 2 == 0) ? 0 : 1;
      bool ok = rep.all_ok() && sum.sign() == expected_sign;
      int gap = 0;
      if (k >= 3) {
        gap = abpir::ratio_gap_d2(n, k);
        ok = ok && gap == sum.sign();
      }
      all_ok = all_ok && ok;
      std::cout << n << "," << k << "," << (rep.all_ok() ? "PASS" : "FAIL") << ","
                << sum.to_string() << "," << sum.sign() << "," << gap << ","
                << (ok ? "PASS" : "FAIL") << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

int run_verify(int n, int k, int d, uint64_t seed) {
  const ProblemInstance inst(n, k, d);
  const abpir::ParamSet params = abpir::solve_scheme(inst);
  nlohmann::json report;
  bool pass = true;

  const abpir::PrivacyReport privacy = abpir::verify_privacy(params, seed);
  report["privacy"] = abpir::privacy_report_json(privacy);
  pass = pass && privacy.pass;

  nlohmann::json recover = nlohmann::json::array();
  std::vector<int> w(static_cast<size_t>(d));
  for (int i = 0; i < d; i++) w[static_cast<size_t>(i)] = i + 1;
  while (true) {
    abpir::QueryPlan plan = abpir::build_plan(params, w, seed);
    const auto rec = abpir::verify_recoverability(plan);
    const auto sim = abpir::simulate(plan, abpir::FieldSpec::binary(1), seed);
    const bool decode_ok = sim.result.ok && sim.matches_store;
    recover.push_back({{"W", w},
                       {"rank_oracle", rec.pass ? "PASS" : "FAIL"},
                       {"decoder", decode_ok ? "PASS" : "FAIL"},
                       {"detail", rec.detail}});
    pass = pass && rec.pass && decode_ok;
    int t = d - 1;
    while (t >= 0 && w[static_cast<size_t>(t)] == k - d + t + 1) t--;
    if (t < 0) break;
    w[static_cast<size_t>(t)]++;
    for (int u = t + 1; u < d; u++) w[static_cast<size_t>(u)] = w[static_cast<size_t>(u - 1)] + 1;
  }
  report["recoverability"] = std::move(recover);

  const Rational closed_form = params.rate.reciprocal();
  const auto eq = abpir::lp_oracle(inst, abpir::ConstraintMode::kEquality);
  const auto ineq = abpir::lp_oracle(inst, abpir::ConstraintMode::kInequality);
  report["lp"] = {{"closed_form", closed_form.to_string()},
                  {"equality_optimum", eq.optimum.to_string()},
                  {"inequality_optimum", ineq.optimum.to_string()},
                  {"equality_bases", eq.bases_enumerated},
                  {"inequality_bases", ineq.bases_enumerated}};
  pass = pass && eq.optimum == closed_form && ineq.optimum == closed_form;

  report["pass"] = pass;
  std::cout << report.dump(2) << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal addition-based private information retrieval: exact scheme "
               "solving, query-plan compilation, simulation, and verification"};
  app.require_subcommand(1);

  int n = 2, k = 2, d = 1;
  std::string w_text, format = "json", field_text = "2", out_path;
  std::string n_range = "2..6", k_range = "2..10", d_rule = "all";
  uint64_t seed = 0;
  std::string trace_out;

  auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("-N,--servers", n, "number of servers")->required();
    cmd->add_option("-K,--messages", k, "number of messages")->required();
    cmd->add_option("-D,--demands", d, "number of demanded messages")->required();
  };

  CLI::App* rate = app.add_subcommand("rate", "solve one instance and print the parameter set");
  add_instance_flags(rate);

  CLI::App* plan_cmd = app.add_subcommand("plan", "compile and print a query plan");
  add_instance_flags(plan_cmd);
  plan_cmd->add_option("-W,--demand-set", w_text, "comma-separated 1-based demand indices")->required();
  plan_cmd->add_option("--seed", seed, "relabeling seed (default 0)");
  plan_cmd->add_option("--format", format, "json, csv, or markdown");
  plan_cmd->add_option("--out", out_path, "output file (stdout when omitted)");

  CLI::App* simulate = app.add_subcommand("simulate", "run the full retrieval protocol");
  add_instance_flags(simulate);
  simulate->add_option("-W,--demand-set", w_text, "comma-separated 1-based demand indices")->required();
  simulate->add_option("-q,--field", field_text, "field size: a prime or 2^k (default 2)");
  simulate->add_option("--seed", seed, "plan and message seed (default 0)");
  simulate->add_option("--trace-out", trace_out, "write answers and decode trace as JSON");

  CLI::App* verify = app.add_subcommand("verify", "privacy, recoverability, and LP oracle checks");
  add_instance_flags(verify);
  verify->add_option("--seed", seed, "plan seed (default 0)");

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate bounds and verdicts over a grid");
  sweep->add_option("--n-range", n_range, "server range, e.g. 2..10");
  sweep->add_option("--k-range", k_range, "message range, e.g. 2..12");
  sweep->add_option("--d-rule", d_rule, "all, divisors-only, or non-divisors-only")
      ->check(CLI::IsMember({"all", "divisors-only", "non-divisors-only"}));
  sweep->add_option("--out", out_path, "output CSV file (stdout when omitted)");

  CLI::App* appendix = app.add_subcommand("appendix", "pairwise identity and sign checks (D = 2)");
  appendix->add_option("--n-range", n_range, "server range, e.g. 2..6");
  appendix->add_option("--k-range", k_range, "message range, e.g. 3..13");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rate->parsed()) {
      const abpir::ParamSet params = abpir::solve_scheme(ProblemInstance(n, k, d));
      std::cout << abpir::param_set_json(params).dump(2) << "\n";
      return 0;
    }
    if (plan_cmd->parsed()) {
      const abpir::ParamSet params = abpir::solve_scheme(ProblemInstance(n, k, d));
      const abpir::QueryPlan plan = abpir::build_plan(params, parse_demand_list(w_text), seed);
      write_output(out_path, abpir::serialize(plan, abpir::plan_format_from_string(format)));
      return 0;
    }
    if (simulate->parsed()) {
      const abpir::FieldSpec field = abpir::FieldSpec::parse(field_text);
      const abpir::ParamSet params = abpir::solve_scheme(ProblemInstance(n, k, d));
      const abpir::QueryPlan plan = abpir::build_plan(params, parse_demand_list(w_text), seed);
      const abpir::SimReport report = abpir::simulate(plan, field, seed);
      const bool ok = report.result.ok && report.matches_store;
      std::cout << "decode: " << (ok ? "OK" : "FAIL") << ", downloaded "
                << report.symbols_downloaded << " symbols, rate " << report.rate.to_string()
                << "\n";
      std::cout << "field " << field.to_string() << ", per-server sums "
                << plan.sums_per_server() << ", recovered symbols "
                << (ok ? std::to_string(plan.subpackets * static_cast<int64_t>(plan.demand.size()))
                       : std::string("0"))
                << ", kernels " << abpir::kernels::active_variant() << "\n";
      if (!ok && !report.result.error.empty())
        std::cout << "decode error: " << report.result.error << "\n";
      if (!trace_out.empty()) {
        nlohmann::json j;
        j["plan"] = abpir::plan_json(plan);
        nlohmann::json answers = nlohmann::json::array();
        abpir::MessageStore store =
            abpir::gen_messages(field, plan.instance.messages, plan.subpackets, seed);
        for (int srv = 1; srv <= plan.instance.servers; srv++)
          answers.push_back(abpir::answer_json(abpir::server_answer(plan, srv, store)));
        j["answers"] = std::move(answers);
        j["trace"] = abpir::trace_json(report.result.trace);
        write_output(trace_out, j.dump(2) + "\n");
      }
      return ok ? 0 : 1;
    }
    if (verify->parsed()) return run_verify(n, k, d, seed);
    if (sweep->parsed()) return run_sweep(n_range, k_range, d_rule, out_path);
    if (appendix->parsed()) return run_appendix(n_range, k_range);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const abpir::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
