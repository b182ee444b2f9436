// Solve Zachary's karate club under majority thresholds with the greedy
// baseline and a short fastBRKGA+rev run.
#include <iostream>

#include "tss/tss.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : TSS_DATA_DIR "/karate.txt";
  tss::Graph g = tss::load_graph(path);
  tss::Thresholds th = tss::majority_thresholds(g);

  tss::VertexSet greedy = tss::reverse_mdg(g, th, tss::mdg(g, th));
  std::cout << "mdg-rev: " << greedy.size() << " seeds\n";

  tss::BrkgaConfig cfg;
  cfg.mode = tss::ParameterMode::power_law;
  cfg.apply_reverse_mdg = true;
  cfg.iteration_limit = 200;
  cfg.seed = 7;
  tss::RunResult res = tss::run_brkga(cfg, g, th);
  std::cout << "fast-rev: " << res.best_fitness << " seeds after " << res.iterations << " generations:";
  for (tss::VertexId v : res.best_set.to_vector()) std::cout << ' ' << g.original_id(v);
  std::cout << '\n';
}
