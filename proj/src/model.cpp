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

#include "shortopic/model.hpp"

#include <stdexcept>

namespace shortopic {

TrainedModel train_model(ModelKind kind, const Corpus& corpus, const ModelParams& params,
                         const WordEmbeddings* embeddings, const SweepObserver& observer) {
  switch (kind) {
    case ModelKind::kLda:
      return lda_train(corpus, params, observer);
    case ModelKind::kDmm:
      return dmm_train(corpus, params, observer);
    case ModelKind::kBtm:
      return btm_train(corpus, params, observer);
    case ModelKind::kWntm:
      return wntm_train(corpus, params, observer);
    case ModelKind::kPtm:
      return ptm_train(corpus, params, observer);
    case ModelKind::kGpuDmm:
      if (embeddings == nullptr) throw std::invalid_argument("GPUDMM requires word embeddings");
      return gpudmm_train(corpus, *embeddings, params, observer);
  }
  throw std::invalid_argument("unknown model kind");
}

bool is_document_level(ModelKind kind) {
  return kind == ModelKind::kDmm || kind == ModelKind::kGpuDmm;
}

}  // namespace shortopic
