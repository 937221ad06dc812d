#include "bousq/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace bousq {

namespace {

// One cached FFTW plan pair per transform size. Plans own their buffers, so
// execution is serialized per plan; plans themselves are immutable once built.
class PlanSet {
  public:
    explicit PlanSet(int n) : n_(n) {
        in_ = fftw_alloc_complex(n);
        out_ = fftw_alloc_complex(n);
        fwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(in_);
        fftw_free(out_);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;

    Spectrum forward(const RealField& f) {
        std::scoped_lock lock(mu_);
        for (int j = 0; j < n_; ++j) {
            in_[j][0] = f[j];
            in_[j][1] = 0.0;
        }
        fftw_execute(fwd_);
        Spectrum s(n_);
        for (int j = 0; j < n_; ++j) s[j] = {out_[j][0], out_[j][1]};
        return s;
    }

    RealField backward(const Spectrum& s) {
        std::scoped_lock lock(mu_);
        for (int j = 0; j < n_; ++j) {
            in_[j][0] = s[j].real();
            in_[j][1] = s[j].imag();
        }
        fftw_execute(bwd_);
        RealField f(n_);
        const double scale = 1.0 / n_;
        for (int j = 0; j < n_; ++j) f[j] = out_[j][0] * scale;
        return f;
    }

  private:
    int n_;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan fwd_;
    fftw_plan bwd_;
    std::mutex mu_;
};

PlanSet& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<PlanSet>> cache;
    std::scoped_lock lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<PlanSet>(n);
    return *slot;
}

}  // namespace

Spectrum to_spectrum(const RealField& f) {
    return plans_for(static_cast<int>(f.size())).forward(f);
}

RealField to_field(const Spectrum& s) {
    return plans_for(static_cast<int>(s.size())).backward(s);
}

void apply_derivative(Spectrum& s, const Grid& grid, int order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("spectral_derivative: order must be in {1,2,3,4}");
    if (static_cast<int>(s.size()) != grid.n)
        throw std::invalid_argument("spectrum length does not match grid n_points");
    const std::complex<double> i_unit(0.0, 1.0);
    for (int j = 0; j < grid.n; ++j) {
        std::complex<double> factor = std::pow(i_unit * grid.wavenumbers[j], order);
        s[j] *= factor;
    }
    if (order % 2 == 1) s[grid.n / 2] = 0.0;
}

RealField spectral_derivative(const RealField& f, const Grid& grid, int order) {
    require_same_length(f, grid);
    Spectrum s = to_spectrum(f);
    apply_derivative(s, grid, order);
    return to_field(s);
}

double integrate(const RealField& f, const Grid& grid) {
    require_same_length(f, grid);
    double sum = 0.0;
    for (double v : f) sum += v;
    return grid.spacing * sum;
}

void dealias_inplace(Spectrum& s, const Grid& grid, double rule) {
    if (!(rule > 0.0) || rule > 1.0)
        throw std::invalid_argument("dealias: rule must lie in (0, 1]");
    if (static_cast<int>(s.size()) != grid.n)
        throw std::invalid_argument("spectrum length does not match grid n_points");
    const double cutoff = rule * grid.nyquist();
    for (int j = 0; j < grid.n; ++j)
        if (std::abs(grid.wavenumbers[j]) > cutoff) s[j] = 0.0;
}

Spectrum dealias(Spectrum s, const Grid& grid, double rule) {
    dealias_inplace(s, grid, rule);
    return s;
}

}  // namespace bousq
