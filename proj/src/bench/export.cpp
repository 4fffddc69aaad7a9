#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "vqebench/bench.hpp"
#include "vqebench/errors.hpp"

namespace vqe::bench {

namespace {

using nlohmann::ordered_json;

ordered_json shots_json(const Shots& shots) { return shots ? ordered_json(*shots) : ordered_json("exact"); }

optim::Termination parse_termination(const std::string& s) {
  for (auto t : {optim::Termination::Budget, optim::Termination::Target, optim::Termination::Stagnation}) {
    if (optim::to_string(t) == s) return t;
  }
  throw ConfigError(fmt::format("unknown termination '{}'", s));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open {} for writing", path.string()));
  out << content;
  out.flush();
  if (!out) throw IoError(fmt::format("failed writing {}", path.string()));
}

struct CellKey {
  std::string optimizer;
  std::string model;
  Shots shots;
  bool operator==(const CellKey&) const = default;
};

}  // namespace

std::string runs_jsonl(const std::vector<RunRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["optimizer"] = r.optimizer;
    j["model"] = r.model;
    j["n_qubits"] = r.n_qubits;
    j["shots"] = shots_json(r.shots);
    j["run"] = r.run;
    j["seed"] = r.seed;
    j["budget"] = r.budget;
    j["fe_to_target"] = r.fe_to_target ? ordered_json(*r.fe_to_target) : ordered_json(nullptr);
    j["success"] = r.success;
    j["best_exact_energy"] = r.best_exact_energy;
    j["termination"] = std::string(optim::to_string(r.termination));
    j["fe_used"] = r.fe_used;
    auto& history = j["history"] = ordered_json::array();
    for (const auto& [fe, value] : r.history) history.push_back({fe, value});
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<RunRecord> parse_runs_jsonl(const std::string& text) {
  std::vector<RunRecord> records;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = ordered_json::parse(line);
      RunRecord r;
      r.optimizer = j.at("optimizer").get<std::string>();
      r.model = j.at("model").get<std::string>();
      r.n_qubits = j.at("n_qubits").get<std::size_t>();
      const auto& shots = j.at("shots");
      if (!shots.is_string()) r.shots = shots.get<std::uint64_t>();
      r.run = j.at("run").get<std::size_t>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.budget = j.at("budget").get<std::uint64_t>();
      if (!j.at("fe_to_target").is_null()) r.fe_to_target = j.at("fe_to_target").get<std::uint64_t>();
      r.success = j.at("success").get<bool>();
      r.best_exact_energy = j.at("best_exact_energy").get<double>();
      r.termination = parse_termination(j.at("termination").get<std::string>());
      r.fe_used = j.at("fe_used").get<std::uint64_t>();
      for (const auto& p : j.at("history")) r.history.emplace_back(p.at(0).get<std::uint64_t>(), p.at(1).get<double>());
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(fmt::format("malformed run record: {}", e.what()));
    }
  }
  return records;
}

std::string summary_csv(const std::vector<RunRecord>& records) {
  // Columns are models ordered by width; rows are (optimizer, shots) pairs.
  std::vector<std::pair<std::size_t, std::string>> models;
  std::vector<std::pair<std::string, Shots>> rows;
  for (const auto& r : records) {
    const std::pair<std::size_t, std::string> m{r.n_qubits, r.model};
    if (std::find(models.begin(), models.end(), m) == models.end()) models.push_back(m);
    const std::pair<std::string, Shots> row{r.optimizer, r.shots};
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
  }
  std::stable_sort(models.begin(), models.end());
  const auto cells = summarize(records);

  std::string out = "optimizer,shots";
  for (const auto& m : models) out += "," + m.second;
  out += '\n';
  for (const auto& [optimizer, shots] : rows) {
    out += optimizer + "," + shots_label(shots);
    for (const auto& m : models) {
      const auto it = std::find_if(cells.begin(), cells.end(), [&](const CellSummary& c) {
        return c.optimizer == optimizer && c.model == m.second && c.shots == shots;
      });
      out += ',';
      if (it == cells.end()) continue;
      out += it->mean_fe ? fmt::format("{}", *it->mean_fe) : "---";
    }
    out += '\n';
  }
  return out;
}

std::string curves_csv(const std::vector<RunRecord>& records, const std::vector<std::uint64_t>& checkpoints) {
  std::vector<CellKey> cells;
  std::vector<std::vector<const RunRecord*>> members;
  for (const auto& r : records) {
    const CellKey key{r.optimizer, r.model, r.shots};
    auto it = std::find(cells.begin(), cells.end(), key);
    if (it == cells.end()) {
      cells.push_back(key);
      members.emplace_back();
      it = cells.end() - 1;
    }
    members[static_cast<std::size_t>(it - cells.begin())].push_back(&r);
  }
  std::size_t width = 0;
  for (const auto& m : members) width = std::max(width, m.size());

  std::string out = "optimizer,model,shots,fe_checkpoint,mean_best";
  for (std::size_t k = 0; k < width; ++k) out += fmt::format(",run_{}", k);
  out += '\n';
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::uint64_t fe : checkpoints) {
      std::vector<double> values;
      for (const RunRecord* r : members[c]) values.push_back(r->best_at(fe));
      double sum = 0.0;
      for (double v : values) sum += v;
      out += fmt::format("{},{},{},{},{}", cells[c].optimizer, cells[c].model, shots_label(cells[c].shots), fe,
                         sum / static_cast<double>(values.size()));
      for (std::size_t k = 0; k < width; ++k) {
        out += ',';
        if (k < values.size()) out += fmt::format("{}", values[k]);
      }
      out += '\n';
    }
  }
  return out;
}

std::string timings_jsonl(const std::vector<RunRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["optimizer"] = r.optimizer;
    j["model"] = r.model;
    j["shots"] = shots_json(r.shots);
    j["run"] = r.run;
    j["wall_time"] = r.wall_time;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void export_results(const PhaseResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  write_file(dir / "runs.jsonl", runs_jsonl(result.records));
  write_file(dir / "summary.csv", summary_csv(result.records));
  write_file(dir / "curves.csv", curves_csv(result.records, result.checkpoints));
  write_file(dir / "timings.jsonl", timings_jsonl(result.records));
}

}  // namespace vqe::bench
