#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "common.hpp"
#include "evego/metrics.hpp"

namespace evego::cli {

namespace {

/// A sequence file holds one or more poses as consecutive 16-line blocks of
/// "x y z" (commas tolerated, '#' comments).
std::vector<Pose3D> load_pose_sequence(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw data_error("FileNotFound: " + path.string());
  std::vector<Eigen::Vector3d> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    double x, y, z;
    if (ss >> x >> y >> z) rows.emplace_back(x, y, z);
  }
  if (rows.empty() || rows.size() % kNumJoints != 0)
    throw data_error("ParseError: " + path.string() + " holds " + std::to_string(rows.size()) +
                     " joint rows, expected a multiple of " + std::to_string(kNumJoints));

  std::vector<Pose3D> frames(rows.size() / kNumJoints);
  for (std::size_t f = 0; f < frames.size(); ++f)
    for (int j = 0; j < kNumJoints; ++j)
      frames[f].row(j) = rows[f * kNumJoints + j].transpose();
  return frames;
}

bool is_pose_file(const std::filesystem::path& p) {
  return p.extension() == ".txt" || p.extension() == ".csv";
}

/// Table-style grouping: sequences under a subdirectory belong to that
/// directory's action; flat files are grouped by the stem before the last
/// underscore ("walk_003" is a "walk" take).
std::string action_of(const std::filesystem::path& rel) {
  if (rel.has_parent_path() && !rel.parent_path().empty())
    return rel.parent_path().begin()->string();
  const std::string stem = rel.stem().string();
  const auto underscore = stem.find_last_of('_');
  return underscore == std::string::npos ? stem : stem.substr(0, underscore);
}

struct SequenceResult {
  std::string name;
  std::string action;
  std::size_t frames = 0;
  double mpjpe = 0.0;
  double pa_mpjpe = 0.0;
};

struct EvalOpts {
  std::string pred, gt, report;
};

void run_eval(const EvalOpts& o) {
  StageTimer timer("eval");

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(o.pred))
    if (entry.is_regular_file() && is_pose_file(entry.path()))
      files.push_back(std::filesystem::relative(entry.path(), o.pred));
  if (files.empty()) throw data_error("FileNotFound: no .txt/.csv pose files under " + o.pred);
  std::sort(files.begin(), files.end());

  std::vector<SequenceResult> results(files.size());
  parallel_for(files.size(), [&](std::size_t i) {
    const std::filesystem::path rel = files[i];
    const std::filesystem::path gt_path = std::filesystem::path(o.gt) / rel;
    if (!std::filesystem::exists(gt_path))
      throw data_error("FileNotFound: no ground truth for " + rel.string());

    const std::vector<Pose3D> pred = load_pose_sequence(std::filesystem::path(o.pred) / rel);
    const std::vector<Pose3D> gt = load_pose_sequence(gt_path);
    if (pred.size() != gt.size())
      throw data_error("ShapeMismatch: " + rel.string() + " has " + std::to_string(pred.size()) +
                       " frames but ground truth has " + std::to_string(gt.size()));

    SequenceResult& r = results[i];
    r.name = rel.generic_string();
    r.action = action_of(rel);
    r.frames = pred.size();
    for (std::size_t f = 0; f < pred.size(); ++f) {
      r.mpjpe += mpjpe(pred[f], gt[f]);
      r.pa_mpjpe += pa_mpjpe(pred[f], gt[f]);
    }
    r.mpjpe /= static_cast<double>(pred.size());
    r.pa_mpjpe /= static_cast<double>(pred.size());
  });

  // Per-action means over sequences, then the overall mean of action means
  // with the spread across actions.
  std::map<std::string, std::vector<const SequenceResult*>> by_action;
  for (const SequenceResult& r : results) by_action[r.action].push_back(&r);

  json report;
  report["sequences"] = json::array();
  for (const SequenceResult& r : results) {
    json row;
    row["name"] = r.name;
    row["action"] = r.action;
    row["frames"] = r.frames;
    row["mpjpe_mm"] = r.mpjpe;
    row["pa_mpjpe_mm"] = r.pa_mpjpe;
    report["sequences"].push_back(row);
  }

  std::vector<double> action_mpjpe, action_pa;
  report["actions"] = json::array();
  for (const auto& [action, seqs] : by_action) {
    double m = 0.0, pa = 0.0;
    for (const SequenceResult* r : seqs) {
      m += r->mpjpe;
      pa += r->pa_mpjpe;
    }
    m /= static_cast<double>(seqs.size());
    pa /= static_cast<double>(seqs.size());
    action_mpjpe.push_back(m);
    action_pa.push_back(pa);
    json row;
    row["action"] = action;
    row["sequences"] = seqs.size();
    row["mpjpe_mm"] = m;
    row["pa_mpjpe_mm"] = pa;
    report["actions"].push_back(row);
  }

  auto mean_std = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::pair{mean, std::sqrt(var / static_cast<double>(xs.size()))};
  };
  const auto [m_mean, m_std] = mean_std(action_mpjpe);
  const auto [pa_mean, pa_std] = mean_std(action_pa);
  report["overall"]["actions"] = by_action.size();
  report["overall"]["mpjpe_mm"] = m_mean;
  report["overall"]["mpjpe_std_mm"] = m_std;
  report["overall"]["pa_mpjpe_mm"] = pa_mean;
  report["overall"]["pa_mpjpe_std_mm"] = pa_std;

  if (!o.report.empty()) {
    std::ofstream os(o.report);
    if (!os) throw data_error("FileNotFound: cannot open " + o.report + " for writing");
    os << report.dump(2) << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  timer.annotate("sequences", files.size());
}

}  // namespace

void register_eval(CLI::App& app) {
  auto opts = std::make_shared<EvalOpts>();
  CLI::App* cmd =
      app.add_subcommand("eval", "MPJPE / PA-MPJPE report with per-action aggregation");
  cmd->add_option("--pred", opts->pred, "directory of predicted pose sequences")->required();
  cmd->add_option("--gt", opts->gt, "directory of ground-truth sequences (same layout)")
      ->required();
  cmd->add_option("--report", opts->report, "output JSON file; prints to stdout when omitted");
  cmd->callback([opts] { run_eval(*opts); });
}

}  // namespace evego::cli
