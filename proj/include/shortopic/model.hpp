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

#pragma once

#include "shortopic/btm.hpp"
#include "shortopic/corpus.hpp"
#include "shortopic/dmm.hpp"
#include "shortopic/gpudmm.hpp"
#include "shortopic/lda.hpp"
#include "shortopic/ptm.hpp"
#include "shortopic/sampling.hpp"
#include "shortopic/wntm.hpp"

namespace shortopic {

// Trains any registered model. `embeddings` is required for GPU-DMM and
// ignored otherwise.
TrainedModel train_model(ModelKind kind, const Corpus& corpus, const ModelParams& params,
                         const WordEmbeddings* embeddings = nullptr,
                         const SweepObserver& observer = {});

// True for models that assign one topic per document (DMM, GPU-DMM).
bool is_document_level(ModelKind kind);

}  // namespace shortopic
