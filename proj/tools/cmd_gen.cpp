#include <sstream>

#include "cli_common.hpp"
#include "vigil/blink/ear.hpp"
#include "vigil/common/csv.hpp"
#include "vigil/common/errors.hpp"
#include "vigil/decision/confusion.hpp"
#include "vigil/synth/ear_series.hpp"
#include "vigil/synth/scores.hpp"

namespace vigil::cli {

namespace {

struct ClassArg {
  std::uint64_t n = 0;
  synth::ScoreDistribution dist;
};

ClassArg parse_class(const std::string& text, const char* flag) {
  const auto parts = csv::split(text, ',');
  if (parts.size() != 3) throw UsageError(std::string(flag) + " expects n,mean,std");
  try {
    ClassArg c;
    c.n = csv::to_uint(parts[0]);
    c.dist = {csv::to_double(parts[1]), csv::to_double(parts[2])};
    if (c.dist.std < 0) throw UsageError(std::string(flag) + ": std must be >= 0");
    return c;
  } catch (const FormatError&) {
    throw UsageError(std::string(flag) + " expects n,mean,std, got '" + text + "'");
  }
}

std::string truth_csv(const std::vector<blink::Blink>& truth) {
  std::ostringstream os;
  os << "blink_id,start_frame,apex_frame,end_frame,min_ear,baseline_ear\n";
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto& b = truth[i];
    os << i << ',' << b.start_frame << ',' << b.apex_frame << ',' << b.end_frame << ','
       << csv::format_double(b.min_ear) << ',' << csv::format_double(b.baseline_ear) << '\n';
  }
  return os.str();
}

}  // namespace

void add_gen(CLI::App& app, Runner& run) {
  auto* cmd = app.add_subcommand("gen", "Generate synthetic EAR series or score datasets");
  cmd->require_subcommand(1);

  auto* ear = cmd->add_subcommand("ear", "EAR series with scripted blinks");
  struct EarOpts {
    std::size_t blinks = 3;
    double noise = 0.0;
    double fps = 30.0;
    std::string truth;
    CommonOptions common{1, {}, false};
  };
  auto e = std::make_shared<EarOpts>();
  ear->add_option("--blinks", e->blinks, "number of blinks");
  ear->add_option("--noise", e->noise, "Gaussian noise std added to every sample")->check(CLI::NonNegativeNumber);
  ear->add_option("--fps", e->fps, "frame rate")->check(CLI::PositiveNumber);
  ear->add_option("--seed", e->common.seed, "RNG seed");
  ear->add_option("--out", e->common.out, "EAR CSV (stdout when omitted)");
  ear->add_option("--truth", e->truth, "ground-truth blinks CSV");
  ear->callback([&run, e] {
    run = [e] {
      synth::RandomScriptOptions opts;
      opts.n_blinks = e->blinks;
      opts.noise_std = e->noise;
      opts.fps = e->fps;
      const auto g = synth::gen_ear_series(synth::random_script(opts, e->common.seed));
      write_output(e->common.out, blink::ear_series_to_csv(g.samples));
      if (!e->truth.empty()) write_output(e->truth, truth_csv(g.truth));
      return kOk;
    };
  });

  auto* scores = cmd->add_subcommand("scores", "Labelled drowsiness scores on the 0..10 scale");
  struct ScoreOpts {
    std::string alert = "200,2,1";
    std::string drowsy = "200,8,1";
    CommonOptions common{1, {}, false};
  };
  auto s = std::make_shared<ScoreOpts>();
  scores->add_option("--alert", s->alert, "n,mean,std of the alert class");
  scores->add_option("--drowsy", s->drowsy, "n,mean,std of the drowsy class");
  scores->add_option("--seed", s->common.seed, "RNG seed");
  scores->add_option("--out", s->common.out, "scores CSV (stdout when omitted)");
  scores->callback([&run, s] {
    run = [s] {
      const auto a = parse_class(s->alert, "--alert");
      const auto d = parse_class(s->drowsy, "--drowsy");
      if (a.n + d.n == 0) throw UsageError("both classes are empty");
      synth::ScoreDatasetSpec spec;
      spec.n_alert = a.n;
      spec.alert = a.dist;
      spec.n_drowsy = d.n;
      spec.drowsy = d.dist;
      spec.seed = s->common.seed;
      write_output(s->common.out, decision::scores_to_csv(synth::gen_score_dataset(spec)));
      return kOk;
    };
  });
}

}  // namespace vigil::cli
