// SPDX-License-Identifier: Apache-2.0

#ifndef DFSKIT_BUILTIN_EXAMPLES_HPP
#define DFSKIT_BUILTIN_EXAMPLES_HPP

#include "dfskit/channel.hpp"

namespace dfskit {

// The worked 12-dimensional example channel: a 4-level sector register
// tensored with a 3-level environment, three Kraus operators shuffling
// the environment levels with a sign flip on the upper two sectors.
// One coherence block (m = 4, b_dim = 2, phases {0, 0, pi, pi}) and a
// 4-dimensional decay subspace.
KrausChannel paper_example_channel();

}  // namespace dfskit

#endif  // DFSKIT_BUILTIN_EXAMPLES_HPP
