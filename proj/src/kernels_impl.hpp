#pragma once

#include "dcurv/kernels.hpp"

namespace dcurv::kernels {

extern const KernelTable kScalarTable;
#if defined(DCURV_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace dcurv::kernels
