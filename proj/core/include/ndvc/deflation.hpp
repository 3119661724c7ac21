// Copyright 2026 The NDVC Authors.
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

#pragma once

#include "ndvc/codec.hpp"
#include "ndvc/container.hpp"

namespace ndvc {

struct DeflateResult {
  ControlStream cs;          // decisions + delta coefficients, dtc_present set
  EncodeResult simulcast;    // what a simulcast encoder would have produced; not stored
};

// Simulcast encode of the source at qp_k, then per block the delta between the
// simulcast levels and the levels obtained by applying the same decisions to
// the decoded R_0 (predicting from the simulcast reconstruction).
DeflateResult deflate(const Sequence& source, const Sequence& r0_decoded, int qp_k,
                      int gop_len = kDefaultGopLength);

// Rebuilds the simulcast levels from the decoded R_0 and the delta coefficients.
EncodeResult inflate(const Sequence& r0_decoded, const ControlStream& cs);
Bytes inflate(ByteView r0, ByteView cs);

// Fraction of nonzero delta coefficients over all blocks of all frames.
double dtc_nonzero_fraction(const ControlStream& cs);

}  // namespace ndvc
