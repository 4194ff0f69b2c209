#pragma once

#include "ckg/kernels.hpp"

namespace ckg::kernels {

const Ops& scalar_table();

#if defined(CKG_HAVE_AVX2_BUILD)
const Ops& avx2_table();
#endif

} // namespace ckg::kernels
