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

#include <algorithm>
#include <sstream>

#include "abpir/io.hpp"

namespace abpir {

namespace {

using nlohmann::json;

int64_t json_count(const BigInt& v, const char* what) {
  if (!v.fits_slong_p())
    throw InvalidArgument(std::string("serialization: ") + what + " exceeds 64-bit range");
  return static_cast<int64_t>(v.get_si());
}

// Messages render as letters when the alphabet suffices, matching the usual
// worked-table presentation; m<k> otherwise.
std::string msg_label(int msg, int messages) {
  if (messages <= 26) return std::string(1, static_cast<char>('a' + msg - 1));
  return "m" + std::to_string(msg);
}

std::string sum_text(const SumSpec& spec, int messages) {
  std::string out;
  for (size_t i = 0; i < spec.terms.size(); i++) {
    if (i) out += "+";
    out += msg_label(spec.terms[i].msg, messages) + std::to_string(spec.terms[i].sp);
  }
  return out;
}

}  // namespace

nlohmann::json param_set_json(const ParamSet& params) {
  const ProblemInstance& inst = params.instance;
  json j;
  j["N"] = inst.servers;
  j["K"] = inst.messages;
  j["D"] = inst.demands;
  j["t_star"] = params.t_star;
  j["S"] = params.scale;
  j["L"] = json_count(params.subpackets, "L");
  json l = json::array(), r = json::array();
  for (const auto& v : params.l_counts) l.push_back(json_count(v, "L_s"));
  for (const auto& v : params.r_counts) r.push_back(json_count(v, "R_i"));
  j["L_counts"] = std::move(l);
  j["R_counts"] = std::move(r);
  j["M"] = json_count(params.downloads_per_server, "M");
  j["rate"] = params.rate.to_string();
  j["rate_decimal"] = params.rate.to_decimal(4);
  j["lower_bound"] = lower_bound(inst).to_string();
  j["upper_bound"] = upper_bound(inst).to_string();
  j["baseline_rate"] = bu_baseline(inst).rate.to_string();
  j["comparison"] = to_string(compare_schemes(inst));
  return j;
}

nlohmann::json plan_json(const QueryPlan& plan) {
  json j;
  j["N"] = plan.instance.servers;
  j["K"] = plan.instance.messages;
  j["D"] = plan.instance.demands;
  j["W"] = plan.demand;
  j["L"] = plan.subpackets;
  j["seed"] = plan.seed;
  json servers = json::array();
  for (const auto& server : plan.servers) {
    json sums = json::array();
    for (const auto& spec : server) {
      json terms = json::array();
      for (const auto& t : spec.terms) terms.push_back({{"msg", t.msg}, {"sp", t.sp}});
      sums.push_back({{"terms", std::move(terms)}});
    }
    servers.push_back(std::move(sums));
  }
  j["servers"] = std::move(servers);
  return j;
}

QueryPlan plan_from_json_value(const nlohmann::json& j) {
  QueryPlan plan;
  plan.instance = ProblemInstance(j.at("N").get<int>(), j.at("K").get<int>(), j.at("D").get<int>());
  plan.demand = j.at("W").get<std::vector<int>>();
  std::sort(plan.demand.begin(), plan.demand.end());
  plan.subpackets = j.at("L").get<int64_t>();
  plan.seed = j.at("seed").get<uint64_t>();
  for (const auto& server : j.at("servers")) {
    std::vector<SumSpec> sums;
    for (const auto& sum : server) {
      SumSpec spec;
      for (const auto& term : sum.at("terms"))
        spec.terms.push_back({term.at("msg").get<int>(), term.at("sp").get<int64_t>()});
      sums.push_back(std::move(spec));
    }
    plan.servers.push_back(std::move(sums));
  }
  if (static_cast<int>(plan.servers.size()) != plan.instance.servers)
    throw InvalidArgument("plan json: server list does not match N");
  return plan;
}

std::string serialize(const QueryPlan& plan, PlanFormat format) {
  switch (format) {
    case PlanFormat::kJson:
      return plan_json(plan).dump(2) + "\n";
    case PlanFormat::kCsv: {
      std::ostringstream out;
      out << "server,i,j,terms\n";
      for (size_t n = 0; n < plan.servers.size(); n++) {
        for (const auto& spec : plan.servers[n]) {
          auto [i, j] = classify(spec, plan.demand);
          out << (n + 1) << "," << i << "," << j << ",";
          for (size_t t = 0; t < spec.terms.size(); t++)
            out << (t ? " " : "") << spec.terms[t].msg << ":" << spec.terms[t].sp;
          out << "\n";
        }
      }
      return out.str();
    }
    case PlanFormat::kMarkdown: {
      // One row per (i, j) class, smallest sums first, demand-heavy first
      // within a size; the layout of the usual worked query table.
      std::map<std::pair<int, int>, std::vector<std::vector<std::string>>> groups;
      for (size_t n = 0; n < plan.servers.size(); n++) {
        for (const auto& spec : plan.servers[n]) {
          auto cls = classify(spec, plan.demand);
          auto& cell = groups[cls];
          if (cell.empty()) cell.resize(plan.servers.size());
          cell[n].push_back(sum_text(spec, plan.instance.messages));
        }
      }
      std::vector<std::pair<int, int>> order;
      for (const auto& [cls, cell] : groups) order.push_back(cls);
      std::sort(order.begin(), order.end(), [](auto a, auto b) {
        if (a.first + a.second != b.first + b.second) return a.first + a.second < b.first + b.second;
        return a.first > b.first;
      });
      std::ostringstream out;
      out << "| (i,j) |";
      for (size_t n = 0; n < plan.servers.size(); n++) out << " Server " << (n + 1) << " |";
      out << "\n|---|";
      for (size_t n = 0; n < plan.servers.size(); n++) out << "---|";
      out << "\n";
      for (const auto& cls : order) {
        out << "| (" << cls.first << "," << cls.second << ") |";
        for (const auto& cell : groups[cls]) {
          out << " ";
          for (size_t t = 0; t < cell.size(); t++) out << (t ? ", " : "") << cell[t];
          out << " |";
        }
        out << "\n";
      }
      return out.str();
    }
  }
  throw InvalidArgument("serialize: unknown plan format");
}

QueryPlan plan_from_json(const std::string& text) {
  return plan_from_json_value(nlohmann::json::parse(text));
}

nlohmann::json answer_json(const Answer& answer) {
  json j;
  j["server"] = answer.server;
  json values = json::array();
  for (uint64_t v : answer.values) values.push_back(v);
  j["values"] = std::move(values);
  return j;
}

nlohmann::json trace_json(const DecodeTrace& trace) {
  json steps = json::array();
  for (const auto& step : trace.steps) {
    json side = json::array();
    for (const auto& r : step.side_info) side.push_back({{"msg", r.msg}, {"sp", r.sp}});
    steps.push_back({{"recovered", {{"msg", step.recovered.msg}, {"sp", step.recovered.sp}}},
                     {"server", step.server},
                     {"sum_index", step.sum_index},
                     {"side_info", std::move(side)}});
  }
  return json{{"steps", std::move(steps)}};
}

nlohmann::json privacy_report_json(const PrivacyReport& report) {
  json j;
  j["N"] = report.instance.servers;
  j["K"] = report.instance.messages;
  j["D"] = report.instance.demands;
  j["pass"] = report.pass;
  j["demand_sets_checked"] = report.demand_sets_checked;
  if (!report.counterexample.empty()) j["counterexample"] = report.counterexample;
  return j;
}

}  // namespace abpir
