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

#include <vector>

#include "ndvc/codec.hpp"
#include "ndvc/container.hpp"

namespace ndvc {

// QP ladder: ascending qp means descending rate.
struct LadderSpec {
  std::vector<int> qps;
  int r0_qp = 8;
  int reps_per_cs = 1;  // 1, 2 or 4

  // Throws InvalidArgument on an empty or unsorted ladder, r0_qp >= min(qps),
  // or an unsupported group size.
  void validate() const;
};

struct CsGroup {
  std::vector<int> member_qps;  // ascending qp
  int cs_qp = 0;                // qp the group's control stream is generated at
};

// Chunks the ladder in order; a group's CS is generated at its second-lowest
// rate member (lowest rate for two members, the member itself for one).
std::vector<CsGroup> assign_cs_groups(const LadderSpec& ladder);
// Index into an ascending-qp group of the given size.
int cs_member_index(int group_size);

// Full RD search over the decoded R_0 at qp_target; residuals are discarded.
ControlStream generate_control_stream(const Sequence& r0_decoded, int qp_target,
                                      int gop_len = kDefaultGopLength);

// Recomputes residuals under the control stream's decisions with its own
// reconstruction loop at qp_out.
EncodeResult guided_encode(const Sequence& r0_decoded, const ControlStream& cs, int qp_out);
Bytes guided_encode(ByteView r0, ByteView cs, int qp_out);

// Decode R_0 and re-encode with full search.
EncodeResult full_transcode(const Representation& r0, int qp_out);
Bytes full_transcode(ByteView r0, int qp_out);

}  // namespace ndvc
