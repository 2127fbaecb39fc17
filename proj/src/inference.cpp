// Copyright 2026 The shortopic Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shortopic/inference.hpp"

#include "shortopic/btm.hpp"
#include "shortopic/error.hpp"
#include "shortopic/kernels.hpp"
#include "shortopic/model.hpp"

namespace shortopic {

FoldInResult fold_in(const TrainedModel& model, const ProjectedCorpus& new_corpus, int iters,
                     std::uint64_t seed) {
  const Corpus& corpus = new_corpus.corpus;
  if (corpus.vocab_size() != model.phi.cols()) {
    throw DataError("corpus was not tokenized against the model vocabulary");
  }
  if (corpus.total_tokens == 0) {
    throw DataError("vocabulary mismatch: no token of the new corpus is in the model vocabulary");
  }
  if (iters < 1) throw std::invalid_argument("fold-in iterations must be >= 1");

  FoldInResult result;
  switch (model.kind) {
    case ModelKind::kLda:
    case ModelKind::kWntm:
    case ModelKind::kPtm:
      result.theta = kernels::parallel::fold_in_tokens(corpus.docs, model.phi,
                                                       model.params.alpha, iters, seed);
      break;
    case ModelKind::kDmm:
    case ModelKind::kGpuDmm:
    case ModelKind::kBtm:
      if (model.topic_weights.size() != model.phi.rows()) {
        throw DataError("model has no corpus-level topic weights");
      }
      if (model.kind == ModelKind::kBtm) {
        result.theta = btm_doc_topics(corpus.docs, model.topic_weights, model.phi,
                                      window_from_params(model.params, kWholeDocument));
      } else {
        result.theta =
            kernels::parallel::fold_in_documents(corpus.docs, model.topic_weights, model.phi);
      }
      break;
  }
  result.oov_tokens = new_corpus.oov_tokens();
  result.oov_fraction.resize(corpus.num_docs(), 0.0);
  for (std::size_t d = 0; d < corpus.num_docs(); ++d) {
    if (d < new_corpus.raw_length.size() && new_corpus.raw_length[d] > 0) {
      result.oov_fraction[d] = static_cast<double>(new_corpus.oov_per_doc[d]) /
                               static_cast<double>(new_corpus.raw_length[d]);
    }
  }
  return result;
}

}  // namespace shortopic
