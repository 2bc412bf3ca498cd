// causalman: dataset generation, projection, metrics and task oracles.
//
// Exit codes: 0 ok, 2 usage or configuration error, 3 I/O error.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "causalman/errors.hpp"
#include "causalman/io.hpp"
#include "causalman/line_builder.hpp"
#include "causalman/metrics.hpp"
#include "causalman/projection.hpp"
#include "causalman/sampling.hpp"
#include "causalman/tasks.hpp"

using namespace causalman;

namespace {

constexpr int kUsage = 2;
constexpr int kIo = 3;

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'");
  }
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::vector<BatchConfig> load_schedule(const ScmGraph& graph, const std::string& spec) {
  if (spec.rfind("default:", 0) == 0) {
    std::size_t rows = 0;
    const auto text = spec.substr(8);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), rows);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || rows == 0) {
      throw ConfigError("bad schedule '" + spec + "' (expected default:<rows>)");
    }
    return default_schedule(rows);
  }
  // A missing schedule is a configuration error, not an I/O one.
  if (!std::filesystem::exists(spec)) throw ConfigError("schedule file '" + spec + "' not found");
  return io::schedule_from_json(graph, io::read_json_file(spec));
}

void write_outputs(const std::string& out_dir, const ScmGraph& graph, const Dataset& data,
                   io::Manifest manifest) {
  ensure_dir(out_dir);
  {
    std::ofstream csv(join(out_dir, "data.csv"), std::ios::binary);
    if (!csv) throw IoError("cannot create '" + join(out_dir, "data.csv") + "'");
    io::write_csv(csv, data);
  }
  manifest.rows = data.n_rows();
  manifest.columns = data.n_cols();
  for (const auto& b : data.batches) {
    if (!b.interventions.empty()) manifest.batches.push_back(b);
  }
  manifest.timestamp = io::utc_timestamp();
  io::write_file(join(out_dir, "manifest.json"), io::manifest_to_json(manifest).dump(2) + "\n");
  io::write_file(join(out_dir, "graph.json"), io::graph_to_json(graph).dump(2) + "\n");
  io::write_file(join(out_dir, "graph.txt"), io::graph_text(graph));
}

// Numbers from a CSV file. With `column` set the file needs a header and
// only that column is read; otherwise every cell is read and a non-numeric
// first line is taken as a header.
std::vector<double> read_vector(const std::string& path, const std::string& column) {
  std::istringstream in(io::read_file(path));
  std::string line;
  std::vector<double> out;
  std::optional<std::size_t> pick;
  bool first = true;
  auto parse = [&](std::string cell, std::size_t lineno) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    if (cell == "true") return 1.0;
    if (cell == "false") return 0.0;
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": '" + cell + "' is not a number");
    }
    return v;
  };
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (first) {
      first = false;
      if (!column.empty()) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          std::string c = cells[i];
          if (!c.empty() && c.back() == '\r') c.pop_back();
          if (c == column) pick = i;
        }
        if (!pick) throw ConfigError(path + ": no column '" + column + "'");
        continue;
      }
      double v;
      const auto& c = cells.front();
      const bool boolean = c.rfind("true", 0) == 0 || c.rfind("false", 0) == 0;
      if (!boolean && std::from_chars(c.data(), c.data() + c.size(), v).ec != std::errc()) {
        continue;
      }
    }
    if (pick) {
      if (*pick >= cells.size()) throw ConfigError(path + ":" + std::to_string(lineno) + ": short row");
      out.push_back(parse(cells[*pick], lineno));
    } else {
      for (const auto& c : cells) out.push_back(parse(c, lineno));
    }
  }
  return out;
}

// Rows of a numeric CSV file; a non-numeric first line is a header.
SampleMatrix read_matrix(const std::string& path) {
  std::istringstream in(io::read_file(path));
  SampleMatrix out;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    bool numeric = true;
    for (std::string c; std::getline(ss, c, ',');) {
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ConfigError(path + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    first = false;
    out.push_back(std::move(row));
  }
  return out;
}

struct EdgePair {
  AdjacencyMatrix directed_only;
  AdjacencyMatrix with_bidirected;
};

// Both files are mapped onto the sorted union of their node names.
std::pair<EdgePair, EdgePair> read_edge_pair(const std::string& pred, const std::string& truth) {
  auto parse = [](const std::string& path) {
    std::istringstream in(io::read_file(path));
    return io::parse_edge_list(in);
  };
  const auto a = parse(pred), b = parse(truth);
  std::map<std::string, std::size_t> index;
  for (const auto* e : {&a, &b}) {
    for (const auto& n : e->nodes) index.emplace(n, 0);
  }
  std::size_t i = 0;
  for (auto& [name, idx] : index) idx = i++;
  auto to_matrices = [&](const io::EdgeList& e) {
    EdgePair m{AdjacencyMatrix(index.size()), AdjacencyMatrix(index.size())};
    for (const auto& [u, v] : e.directed) {
      m.directed_only.set(index.at(u), index.at(v));
      m.with_bidirected.set(index.at(u), index.at(v));
    }
    for (const auto& [u, v] : e.bidirected) {
      m.with_bidirected.set(index.at(u), index.at(v));
      m.with_bidirected.set(index.at(v), index.at(u));
    }
    return m;
  };
  return {to_matrices(a), to_matrices(b)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CausalMan manufacturing SCM simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolVersion));

  std::string graph_spec, out, schedule_spec, format = "csv";
  std::uint64_t seed = 0;
  bool observable_only = false;
  unsigned threads = 0;

  auto* sample = app.add_subcommand("sample", "Sample a batch schedule");
  sample->add_option("--graph", graph_spec, "Preset name or graph/config JSON file")->required();
  sample->add_option("--schedule", schedule_spec, "Schedule JSON file or default:<rows>")->required();
  sample->add_option("--seed", seed, "Master seed")->required();
  sample->add_option("--out", out, "Output directory")->required();
  sample->add_flag("--observable-only", observable_only, "Drop latent columns");
  sample->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv"}));
  sample->add_option("--threads", threads, "Worker threads (default: CAUSALMAN_THREADS or all cores)");

  std::vector<std::string> dos;
  std::size_t n_rows = 1000;
  auto* intervene_cmd = app.add_subcommand("intervene", "Sample one interventional batch");
  intervene_cmd->add_option("--graph", graph_spec, "Preset name or graph/config JSON file")->required();
  intervene_cmd->add_option("--do", dos, "node=value (repeatable)")->required();
  intervene_cmd->add_option("--n", n_rows, "Number of rows")->check(CLI::PositiveNumber);
  intervene_cmd->add_option("--seed", seed, "Master seed")->required();
  intervene_cmd->add_option("--out", out, "Output directory")->required();
  intervene_cmd->add_flag("--observable-only", observable_only, "Drop latent columns");
  intervene_cmd->add_option("--threads", threads, "Worker threads");

  auto* project = app.add_subcommand("project", "Latent projection to an ADMG edge list");
  project->add_option("--graph", graph_spec, "Preset name or graph/config JSON file")->required();
  project->add_option("--out", out, "Edge-list output file")->required();

  auto* preset_cmd = app.add_subcommand("preset", "Write a preset line configuration as JSON");
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "small or medium")->required();
  preset_cmd->add_option("--out", out, "Output file (default: stdout)");

  auto* metrics = app.add_subcommand("metrics", "Evaluation metrics");
  metrics->require_subcommand(1);
  std::string pred, truth, p_file, q_file, x_file, y_file, column;
  bool include_bidirected = false;
  auto* shd_cmd = metrics->add_subcommand("shd", "Structural Hamming distance of two edge lists");
  auto* pr_cmd = metrics->add_subcommand("pr", "Edge precision and recall of two edge lists");
  for (auto* c : {shd_cmd, pr_cmd}) {
    c->add_option("--pred", pred, "Predicted edge list")->required();
    c->add_option("--truth", truth, "True edge list")->required();
    c->add_flag("--include-bidirected", include_bidirected,
                "Count a<->b as the entries a->b and b->a");
  }
  auto* jsd_cmd = metrics->add_subcommand("jsd", "Jensen-Shannon divergence (base 2)");
  jsd_cmd->add_option("--p", p_file, "CSV probability vector")->required();
  jsd_cmd->add_option("--q", q_file, "CSV probability vector")->required();
  auto* mmd_cmd = metrics->add_subcommand("mmd", "MMD^2 with RBF kernel, median bandwidth");
  mmd_cmd->add_option("--x", x_file, "CSV sample matrix")->required();
  mmd_cmd->add_option("--y", y_file, "CSV sample matrix")->required();
  auto* mse_cmd = metrics->add_subcommand("mse", "Mean squared error");
  mse_cmd->add_option("--u", x_file, "CSV vector")->required();
  mse_cmd->add_option("--v", y_file, "CSV vector")->required();
  auto* ate_cmd = metrics->add_subcommand("ate", "Difference of means");
  ate_cmd->add_option("--treated", x_file, "CSV of treated outcomes")->required();
  ate_cmd->add_option("--control", y_file, "CSV of control outcomes")->required();
  for (auto* c : {mse_cmd, ate_cmd}) {
    c->add_option("--column", column, "Read only this column (file needs a header)");
  }

  auto* task = app.add_subcommand("task", "Benchmark tasks");
  task->require_subcommand(1);
  auto* task_run = task->add_subcommand("run", "Ground-truth effect of a built-in task");
  std::string task_id;
  std::size_t n_per_arm = 10000;
  task_run->add_option("--id", task_id, "T1, T2, T3, T4 or ADDITIONAL")->required();
  task_run->add_option("--graph", graph_spec, "Preset name or graph/config JSON file")->default_val("small");
  task_run->add_option("--n", n_per_arm, "Rows per arm")->check(CLI::PositiveNumber);
  task_run->add_option("--seed", seed, "Seed")->required();
  task_run->add_option("--threads", threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    const SamplerOptions options{threads};
    if (sample->parsed()) {
      const ScmGraph graph = io::load_graph(graph_spec);
      const auto schedule = load_schedule(graph, schedule_spec);
      Dataset data = sample_schedule(graph, schedule, seed, options);
      if (observable_only) data = observe(data);
      io::Manifest m;
      m.command = "sample";
      m.graph_name = graph.name();
      m.graph_fingerprint = data.graph_fingerprint;
      m.seed = seed;
      m.schedule_digest = io::schedule_digest(graph, schedule);
      m.observable_only = observable_only;
      write_outputs(out, graph, data, m);
      std::cout << "wrote " << data.n_rows() << " rows x " << data.n_cols() << " columns to "
                << out << "\n";
    } else if (intervene_cmd->parsed()) {
      const ScmGraph graph = io::load_graph(graph_spec);
      BatchConfig batch;
      batch.n_samples = n_rows;
      for (const auto& d : dos) {
        const auto eq = d.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw ConfigError("--do expects node=value, got '" + d + "'");
        }
        batch.interventions.push_back(resolve(graph, {d.substr(0, eq), d.substr(eq + 1)}));
      }
      Dataset data = sample_batch(graph, batch, seed, options);
      if (observable_only) data = observe(data);
      io::Manifest m;
      m.command = "intervene";
      m.graph_name = graph.name();
      m.graph_fingerprint = data.graph_fingerprint;
      m.seed = seed;
      m.schedule_digest = io::schedule_digest(graph, {batch});
      m.observable_only = observable_only;
      write_outputs(out, graph, data, m);
      std::cout << "wrote " << data.n_rows() << " rows x " << data.n_cols() << " columns to "
                << out << "\n";
    } else if (project->parsed()) {
      const ScmGraph graph = io::load_graph(graph_spec);
      const Admg admg = latent_project(graph);
      io::write_file(out, io::admg_text(admg, graph));
      const Census c = node_census(graph);
      std::cout << "total,observable,latent,edges,projected_directed,projected_bidirected,"
                   "collapsed_pairs\n"
                << c.total << ',' << c.observable << ',' << c.latent << ',' << c.edges << ','
                << c.projected_directed << ',' << c.projected_bidirected << ','
                << c.collapsed_pairs << '\n';
    } else if (preset_cmd->parsed()) {
      const std::string text = io::config_to_json(preset(preset_name)).dump(2) + "\n";
      if (out.empty()) {
        std::cout << text;
      } else {
        io::write_file(out, text);
      }
    } else if (shd_cmd->parsed()) {
      const auto [a, b] = read_edge_pair(pred, truth);
      const auto d = shd(a.directed_only, b.directed_only);
      const auto all = shd(a.with_bidirected, b.with_bidirected);
      std::cout << "shd,shd_directed,shd_with_bidirected\n"
                << (include_bidirected ? all : d) << ',' << d << ',' << all << '\n';
    } else if (pr_cmd->parsed()) {
      const auto [a, b] = read_edge_pair(pred, truth);
      const auto r = include_bidirected ? precision_recall(a.with_bidirected, b.with_bidirected)
                                        : precision_recall(a.directed_only, b.directed_only);
      std::cout << "precision,recall,precision_undefined,recall_undefined\n"
                << fmt(r.precision) << ',' << fmt(r.recall) << ','
                << (r.precision_undefined ? "true" : "false") << ','
                << (r.recall_undefined ? "true" : "false") << '\n';
    } else if (jsd_cmd->parsed()) {
      std::cout << "jsd\n" << fmt(jsd(read_vector(p_file, ""), read_vector(q_file, ""))) << '\n';
    } else if (mmd_cmd->parsed()) {
      std::cout << "mmd\n" << fmt(mmd(read_matrix(x_file), read_matrix(y_file))) << '\n';
    } else if (mse_cmd->parsed()) {
      std::cout << "mse\n"
                << fmt(mse(read_vector(x_file, column), read_vector(y_file, column))) << '\n';
    } else if (ate_cmd->parsed()) {
      std::cout << "ate\n"
                << fmt(ate(read_vector(x_file, column), read_vector(y_file, column))) << '\n';
    } else if (task_run->parsed()) {
      const TaskId id = task_from_name(task_id);
      const ScmGraph graph = io::load_graph(graph_spec);
      const auto e = ground_truth_effect(graph, builtin_task(id), n_per_arm, seed, options);
      std::cout << "task_id,effect,se,n,seed,mean_treated,mean_control\n"
                << task_name(id) << ',' << fmt(e.effect) << ',' << fmt(e.se) << ','
                << n_per_arm << ',' << seed << ',' << fmt(e.mean_treated) << ','
                << fmt(e.mean_control) << '\n';
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
