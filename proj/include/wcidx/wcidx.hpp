#pragma once
/// Umbrella header pulling in the whole library.

#include "wcidx/alphabet.hpp"
#include "wcidx/common.hpp"
#include "wcidx/group_lcp.hpp"
#include "wcidx/heavy_path.hpp"
#include "wcidx/index.hpp"
#include "wcidx/index_file.hpp"
#include "wcidx/matcher.hpp"
#include "wcidx/oracles.hpp"
#include "wcidx/partition.hpp"
#include "wcidx/pattern_handle.hpp"
#include "wcidx/stats.hpp"
#include "wcidx/subtree.hpp"
#include "wcidx/suffix_tree.hpp"
#include "wcidx/text_index.hpp"
#include "wcidx/topology_codec.hpp"
#include "wcidx/unrooted.hpp"
#include "wcidx/verify.hpp"
#include "wcidx/wildcard_pattern.hpp"
#include "wcidx/wildcard_tree.hpp"
