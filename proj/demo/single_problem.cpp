// Generates one problem of each task in memory and solves it with the oracles.

#include <iostream>

#include "forge/forge.hpp"

int main() {
  forge::Rng rng(forge::derive_seed(7, "demo", 0));

  const forge::RotationProblem rot = forge::sample_problem_spec(2, rng);
  std::cout << "rotation: " << rot.edge_count() << " edges, lengths";
  for (int l : rot.question.spec.lengths) std::cout << ' ' << l;
  std::cout << ", answer " << rot.answer_index << ", oracle " << forge::solve_rotation(rot) << '\n';

  const forge::CompositionProblem comp = forge::sample_composition_problem(3, rng);
  std::cout << "composition: " << comp.piece_count() << " pieces, original area "
            << forge::polygon_area(comp.original.polygon).get_d() << ", answer " << comp.answer_index
            << ", oracle " << forge::solve_composition(comp) << '\n';

  const forge::Image q = forge::render_polyomino(forge::build_polyomino(rot.question.spec), rot.question.pose);
  forge::write_file("demo_question.png", forge::encode_png(q));
  std::cout << "wrote demo_question.png\n";
}
