#ifndef QDTK_ANALYSIS_HPP
#define QDTK_ANALYSIS_HPP

#include "qdtk/optimality.hpp"
#include "qdtk/sampling.hpp"

namespace qdtk {

struct AnalysisOptions {
  unsigned long long budget = 1000000;
  DiffOptions diff;
  bool run_sampling = false;
  SamplingConfig sampling;
};

struct YVertexVerdict {
  Vec y0;
  bool certified = false;
  Certificate cert;  // meaningful when certified
};

enum class Classification { KKTConsistent, NonOptimal, CQNotEstablished };

struct AnalysisReport {
  ProgramData data;
  SearchStatus search_status = SearchStatus::ExhaustedComplete;
  unsigned long long examined = 0;
  Selection sel;      // when a selection was found
  CQWitness witness;  // idem (unused on the set-constrained path)
  MfcqReport mfcq;
  // Per active inequality: the qualifying z* if one exists.
  std::vector<std::optional<Vec>> general_position;
  ConeK cone;
  std::vector<YVertexVerdict> y_verdicts;
  Classification classification = Classification::CQNotEstablished;
  Vec y0_witness;  // when NonOptimal
  bool used_set_A = false;
  std::vector<Vec> normal_generators;
  bool sampled = false;
  Improvement improvement;  // when sampling ran on a NonOptimal verdict
};

// Full pipeline; precondition: validate(p) returned no violations.
AnalysisReport analyze(const Problem& p, const AnalysisOptions& opt = {});

}  // namespace qdtk

#endif
