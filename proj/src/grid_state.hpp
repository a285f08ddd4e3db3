#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <fftw3.h>

namespace gsqg::detail {

/// Grid-lifetime FFT plans plus the per-grid symbol cache. Plan creation
/// and destruction are serialized globally; new-array execution is
/// thread-safe.
struct GridState {
    explicit GridState(int n);
    ~GridState();
    GridState(const GridState&) = delete;
    GridState& operator=(const GridState&) = delete;

    int n;
    fftw_plan plan_r2c = nullptr;
    fftw_plan plan_c2r = nullptr;

    std::mutex cache_mutex;
    std::map<std::string, std::shared_ptr<const std::vector<double>>> symbol_cache;

    std::shared_ptr<const std::vector<double>> cached_table(
        const std::string& key, const std::function<std::vector<double>()>& fill);
};

std::mutex& fftw_planner_mutex();

}  // namespace gsqg::detail
