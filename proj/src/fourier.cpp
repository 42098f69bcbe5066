#include "hwzak/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace hwzak {
namespace detail {
namespace {

// FFTW planning is not thread safe; execution of an existing plan on
// caller-owned arrays is.
class PlanCache {
public:
    fftw_plan get(int n, int sign)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache()
    {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

} // namespace

void fft_inplace(std::span<cplx> data, int sign)
{
    if (data.empty()) return;
    const int n = static_cast<int>(data.size());
    fftw_plan plan = cache().get(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

} // namespace detail

namespace {

// (-1)^(N/2) (-1)^j, the factor that recentres both index axes.
inline double centre_sign(std::size_t half, std::size_t j)
{
    return ((half + j) % 2 == 0) ? 1.0 : -1.0;
}

CVec centred_dft(const CVec& in, int sign)
{
    const std::size_t n = in.size();
    const std::size_t half = n / 2;
    CVec work(n);
    for (std::size_t j = 0; j < n; ++j) work[j] = in[j] * (j % 2 == 0 ? 1.0 : -1.0);
    detail::fft_inplace(work, sign);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) work[k] *= centre_sign(half, k) * scale;
    return work;
}

} // namespace

MomentumSignal fourier_forward(const Signal& s)
{
    return MomentumSignal(s.grid, centred_dft(s.values, -1));
}

Signal fourier_inverse(const MomentumSignal& m)
{
    return Signal(m.grid, centred_dft(m.values, +1));
}

} // namespace hwzak
