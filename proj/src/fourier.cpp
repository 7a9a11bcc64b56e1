#include <complex>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "aesthetics/imaging.hpp"

namespace aesthetics {

namespace {

// The FFTW planner is not reentrant; execution of a finished plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

struct PlanDestroy {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;
using Plan = std::unique_ptr<fftw_plan_s, PlanDestroy>;

}  // namespace

GrayImage dft2_magnitude(const GrayImage& img) {
    const int w = img.width();
    const int h = img.height();
    const std::size_t n = img.size();

    Buffer in(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
    Buffer out(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
    if (!in || !out) throw std::bad_alloc();

    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_2d(h, w, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    }
    if (!plan) throw Error("dft2_magnitude: FFTW planning failed");

    auto src = img.values();
    for (std::size_t i = 0; i < n; ++i) {
        in[i][0] = src[i];
        in[i][1] = 0.0;
    }
    fftw_execute(plan.get());

    GrayImage mag(w, h);
    auto dst = mag.values();
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::hypot(out[i][0], out[i][1]);
    return mag;
}

}  // namespace aesthetics
