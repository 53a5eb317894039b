#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "compsent/corpus.hpp"
#include "compsent/synth.hpp"

// Regenerates the bundled corpus file and prints the per-domain label
// counts of the rows above the ingestion confidence threshold.
int main(int argc, char** argv) {
  CLI::App app{"write the bundled annotated corpus"};
  std::string output = "data/compsent19.jsonl";
  std::uint64_t seed = 7;
  bool skip_low = false;
  app.add_option("--output", output, "target JSONL path");
  app.add_option("--seed", seed, "generator seed (default 7)");
  app.add_flag("--kept-only", skip_low,
               "omit the rows below the 0.5 confidence threshold");
  CLI11_PARSE(app, argc, argv);

  compsent::SynthConfig cfg;
  cfg.seed = seed;
  cfg.include_below_threshold = !skip_low;
  try {
    compsent::Dataset ds = compsent::synthesize_corpus(cfg);
    compsent::save_jsonl_file(ds, output);
    std::cout << "wrote " << ds.sentences.size() << " rows to " << output
              << "\n\n";
    compsent::Dataset kept = compsent::filter_by_confidence(ds, 0.5);
    std::cout << compsent::stats_to_markdown(compsent::dataset_stats(kept));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
