#pragma once

#include <functional>
#include <string>
#include <vector>

namespace superint {

/// 17-significant-digit decimal rendering (round-trips doubles exactly, so
/// equal runs produce byte-identical files).
std::string fmt17(double x);

std::string csv_row(const std::vector<std::string>& cells);

/// Number of worker threads for point sweeps: SUPERINT_THREADS if set,
/// otherwise hardware concurrency (capped at 8).
int thread_budget();

/// Deterministic parallel map: out[i] = body(i) for i in [0, n).
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace superint
