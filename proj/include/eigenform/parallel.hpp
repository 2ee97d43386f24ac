#pragma once

#include <functional>

namespace eigenform {

/// Thread cap from EIGENFORM_LAB_THREADS; unset or 0 means the OpenMP default.
int configured_threads();

/// Runs body(0..n-1) on an OpenMP team. The first exception thrown by any
/// iteration is rethrown on the calling thread after the loop.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace eigenform
