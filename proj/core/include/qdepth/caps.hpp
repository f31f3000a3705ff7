#pragma once

#include <cstddef>

namespace qdepth {

/// Size limits; every operation that can blow up checks the relevant one and
/// throws CapExceeded rather than running away.
struct Caps {
    std::size_t max_group_order = 20160;
    std::size_t max_classes = 60;
    std::size_t max_tensor_dim = 4096;
    std::size_t max_tensor_summands = 1000000;
    std::size_t max_hom_unknowns = 16384;
};

}  // namespace qdepth
