// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ellrange/kernels.hpp"

namespace ellrange::kernels::detail {

const KernelTable& scalar_table() noexcept;
#if defined(ELLRANGE_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace ellrange::kernels::detail
