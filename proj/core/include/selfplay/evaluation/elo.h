// Copyright 2026 The Selfplay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SELFPLAY_EVALUATION_ELO_H_
#define SELFPLAY_EVALUATION_ELO_H_

#include <map>
#include <string>
#include <vector>

#include "selfplay/evaluation/tournament.h"

namespace selfplay {

// P(A wins) + 0.5 P(draw) = 1 / (1 + 10^((R_B - R_A) / 400)).
double EloExpectedScore(double rating_a, double rating_b);

struct EloTable {
  std::map<std::string, double> ratings;
  std::string anchor;
  int iterations = 0;
  double log_likelihood = 0.0;
  double gradient_inf_norm = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

struct EloFitOptions {
  double tolerance = 1e-6;  // on the log-likelihood gradient inf-norm
  int max_iterations = 200;
};

// Maximum-likelihood ratings under the logistic model, draws counted as half
// a win. The anchor is pinned at exactly 0. A comparison graph with several
// connected components is fitted per component: the component holding the
// anchor uses it, the others are pinned at their lexicographically smallest
// id and a warning is recorded. Throws std::invalid_argument for empty
// results or an anchor that played no matches.
EloTable FitElo(const MatchResults& results, const std::string& anchor,
                const EloFitOptions& options = {});

std::string EloTableToJson(const EloTable& table);

}  // namespace selfplay

#endif  // SELFPLAY_EVALUATION_ELO_H_
