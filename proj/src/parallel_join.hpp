#pragma once

#include "collection.hpp"
#include "report.hpp"

namespace ssj {

struct JoinOptions;

/// Data-parallel all-pairs self-join: workers scan disjoint record ranges,
/// each record keeps a bounded candidate buffer fed by a length-window cut
/// and the bitmap filter, buffers are compacted in worker order and the
/// compacted list is verified serially. Jaccard thresholds only.
JoinReport parallel_bitmap_join(const TokenizedCollection& collection, const JoinOptions& options);

}  // namespace ssj
