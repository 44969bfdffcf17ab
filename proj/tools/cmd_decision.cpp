#include <iostream>

#include "cli_common.hpp"
#include "vigil/common/csv.hpp"
#include "vigil/decision/confusion.hpp"
#include "vigil/decision/threshold.hpp"
#include "vigil/decision/vote.hpp"

namespace vigil::cli {

namespace {

std::string pct(const std::optional<double>& v) {
  if (!v) return "n/a";
  return (*v > 0 ? "+" : "") + report::format_fixed(*v, 1) + "%";
}

}  // namespace

void add_optimize(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("optimize", "Pick the cost-minimizing threshold for each model's scores");
  struct Opts {
    std::vector<std::string> inputs;
    double w_fn = 2.0;
    double w_fp = 1.0;
    std::string stats_out;
    CommonOptions common;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("scores", o->inputs, "one scores CSV (id,score,label) per model")->required();
  cmd->add_option("--w-fn", o->w_fn, "weight of the false-negative rate")->check(CLI::NonNegativeNumber);
  cmd->add_option("--w-fp", o->w_fp, "weight of the false-positive rate")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", o->common.out, "threshold curve CSV (suffixed per model when several)");
  cmd->add_option("--stats-out", o->stats_out, "write per-model TPR/TNR at the optimum as JSON for `vote`");
  cmd->add_flag("--json", o->common.json, "print the table as JSON");
  cmd->callback([&run, o] {
    run = [o] {
      const decision::CostWeights w{o->w_fn, o->w_fp};
      const auto grid = decision::threshold_grid();
      const std::string cost_name = csv::format_double(w.w_fn) + "FN+" + csv::format_double(w.w_fp) + "FP";
      report::ReportTable table("Threshold optimization (" + cost_name + ")",
                                {"Model", "Threshold", "Cost", "FP", "FN", "Cost@default", "FP@default",
                                 "FN@default", "FN change", "FP change"});
      std::vector<decision::ModelStats> stats;
      for (std::size_t m = 0; m < o->inputs.size(); ++m) {
        const auto data = decision::scores_from_csv(read_text(o->inputs[m]));
        const auto best = decision::optimize_threshold(data, grid, w);
        const auto cmp = decision::compare_to_default(data, best.threshold, decision::kDefaultThreshold, w);
        const int id = static_cast<int>(m) + 1;
        table.add_row({std::to_string(id), report::format_fixed(best.threshold, 2), report::format_fixed(best.cost),
                       report::format_fixed(best.rates.fpr), report::format_fixed(best.rates.fnr),
                       report::format_fixed(cmp.baseline.cost), report::format_fixed(cmp.baseline.fpr),
                       report::format_fixed(cmp.baseline.fnr), pct(cmp.fnr_change_pct), pct(cmp.fpr_change_pct)});
        stats.push_back({id, best.rates.tpr, best.rates.tnr, best.threshold});
        if (!o->common.out.empty()) {
          const auto path = o->inputs.size() == 1 ? o->common.out : with_suffix(o->common.out, std::to_string(id));
          write_output(path, decision::curve_to_csv(decision::sweep(data, grid, w)));
        }
      }
      if (!o->stats_out.empty()) write_output(o->stats_out, decision::model_stats_to_json(stats) + "\n");
      print_table(table, o->common.json);
      return kOk;
    };
  });
}

void add_vote(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("vote", "Combine per-model decisions with sensitivity-weighted voting");
  struct Opts {
    std::string stats;
    std::string decisions;
    CommonOptions common;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--stats", o->stats, "model stats JSON")->required();
  cmd->add_option("--decisions", o->decisions, "comma-separated 0/1 decision per model")->required();
  cmd->add_option("--out", o->common.out, "also write the result JSON here");
  cmd->callback([&run, o] {
    run = [o] {
      const auto stats = decision::model_stats_from_json(read_text(o->stats));
      std::vector<int> bits;
      for (const auto& item : split_list(o->decisions)) {
        if (item != "0" && item != "1") throw UsageError("decisions must be 0 or 1, got '" + item + "'");
        bits.push_back(item == "1" ? 1 : 0);
      }
      if (bits.size() != stats.size()) {
        throw UsageError(std::to_string(bits.size()) + " decisions for " + std::to_string(stats.size()) + " models");
      }
      const auto text = decision::vote_result_to_json(decision::vote(bits, stats)) + "\n";
      if (!o->common.out.empty()) write_output(o->common.out, text);
      std::cout << text << std::flush;
      return kOk;
    };
  });
}

}  // namespace vigil::cli
