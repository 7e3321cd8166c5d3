#pragma once

// Dormand-Prince 5(4) with FSAL, continuous extension of order 4 and a
// proportional-integral step size controller (Hairer/Norsett/Wanner, DOPRI5).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace solvflow {

template <std::size_t N>
class DormandPrince5 {
 public:
  using State = std::array<double, N>;

  struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double h_max = std::numeric_limits<double>::infinity();
    double safety = 0.9;
    double fac_min = 0.2;  // largest shrink per step is 1/5
    double fac_max = 10.0;
    double beta = 0.04;    // PI stabilization
  };

  explicit DormandPrince5(Options opt = {}) : opt_(opt) {}

  // f(t, y, dy) returns false if y lies outside the domain of the vector field.
  // Returns false if f fails at the initial point.
  template <class F>
  bool start(F& f, double t0, const State& y0) {
    t_ = t_old_ = t0;
    y_ = y_old_ = y0;
    facold_ = 1e-4;
    last_rejected_ = false;
    accepted_ = rejected_ = 0;
    evals_ = 1;
    if (!f(t_, y_, k1_)) return false;
    h_ = initial_step(f);
    return true;
  }

  // Attempts one step of size h (h > 0). On acceptance the state advances and
  // the dense-output polynomial covers [t_old(), t()].
  template <class F>
  bool attempt(F& f, double h) {
    using std::abs;
    State ys, k2, k3, k4, k5, k6, k7, y1;
    bool ok = true;
    auto stage = [&](double c, State& out, auto&& combo) {
      if (!ok) return;
      for (std::size_t i = 0; i < N; ++i) ys[i] = y_[i] + h * combo(i);
      ++evals_;
      ok = f(t_ + c * h, ys, out) && finite(ys) && finite(out);
    };
    stage(c2, k2, [&](std::size_t i) { return a21 * k1_[i]; });
    stage(c3, k3, [&](std::size_t i) { return a31 * k1_[i] + a32 * k2[i]; });
    stage(c4, k4, [&](std::size_t i) { return a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]; });
    stage(c5, k5, [&](std::size_t i) { return a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; });
    stage(1.0, k6, [&](std::size_t i) {
      return a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        y1[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      ++evals_;
      ok = finite(y1) && f(t_ + h, y1, k7) && finite(k7);
    }
    if (!ok) {
      // Outside the domain: shrink hard and retry.
      ++rejected_;
      last_rejected_ = true;
      h_ = 0.25 * h;
      return false;
    }

    double err = 0.0, local = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk = opt_.abs_tol + opt_.rel_tol * std::max(abs(y_[i]), abs(y1[i]));
      err += (e / sk) * (e / sk);
      local = std::max(local, abs(e) / (opt_.abs_tol + abs(y1[i])));
    }
    err = std::sqrt(err / static_cast<double>(N));

    const double expo1 = 0.2 - opt_.beta * 0.75;
    const double facc1 = 1.0 / opt_.fac_min;
    const double facc2 = 1.0 / opt_.fac_max;
    const double fac11 = std::pow(err, expo1);

    if (err <= 1.0) {
      double fac = fac11 / std::pow(facold_, opt_.beta);
      fac = std::max(facc2, std::min(facc1, fac / opt_.safety));
      double hnew = h / fac;
      facold_ = std::max(err, 1e-4);
      if (last_rejected_) hnew = std::min(hnew, h);
      last_rejected_ = false;

      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = y1[i] - y_[i];
        const double bspl = h * k1_[i] - ydiff;
        r1_[i] = y_[i];
        r2_[i] = ydiff;
        r3_[i] = bspl;
        r4_[i] = ydiff - h * k7[i] - bspl;
        r5_[i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      t_old_ = t_;
      y_old_ = y_;
      t_ += h;
      y_ = y1;
      k1_ = k7;
      h_ = std::min(hnew, opt_.h_max);
      last_local_error_ = local;
      ++accepted_;
      return true;
    }
    h_ = h / std::min(facc1, fac11 / opt_.safety);
    last_rejected_ = true;
    ++rejected_;
    return false;
  }

  // Continuous extension on the last accepted step.
  State dense(double t) const {
    const double h = t_ - t_old_;
    const double th = h > 0 ? (t - t_old_) / h : 1.0;
    const double th1 = 1.0 - th;
    State out;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = r1_[i] + th * (r2_[i] + th1 * (r3_[i] + th * (r4_[i] + th1 * r5_[i])));
    return out;
  }

  double t() const noexcept { return t_; }
  double t_old() const noexcept { return t_old_; }
  const State& y() const noexcept { return y_; }
  const State& dy() const noexcept { return k1_; }
  double suggested_step() const noexcept { return h_; }
  // max_i |err_i| / (abs_tol + |y_i|) of the last accepted step.
  double last_local_error() const noexcept { return last_local_error_; }
  std::size_t accepted() const noexcept { return accepted_; }
  std::size_t rejected() const noexcept { return rejected_; }
  std::size_t evaluations() const noexcept { return evals_; }
  const Options& options() const noexcept { return opt_; }

 private:
  static bool finite(const State& s) {
    for (double x : s)
      if (!std::isfinite(x)) return false;
    return true;
  }

  template <class F>
  double initial_step(F& f) {
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
      dnf += (k1_[i] / sk) * (k1_[i] / sk);
      dny += (y_[i] / sk) * (y_[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, opt_.h_max);
    State y1, f1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h * k1_[i];
    ++evals_;
    if (!f(t_ + h, y1, f1) || !finite(f1)) return 0.1 * h;
    double der2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opt_.abs_tol + opt_.rel_tol * std::abs(y_[i]);
      der2 += ((f1[i] - k1_[i]) / sk) * ((f1[i] - k1_[i]) / sk);
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100 * h, h1, opt_.h_max});
  }

  static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
  static constexpr double a21 = 0.2;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                          a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                          a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  Options opt_;
  double t_ = 0.0, t_old_ = 0.0, h_ = 0.0, facold_ = 1e-4, last_local_error_ = 0.0;
  bool last_rejected_ = false;
  State y_{}, y_old_{}, k1_{};
  State r1_{}, r2_{}, r3_{}, r4_{}, r5_{};
  std::size_t accepted_ = 0, rejected_ = 0, evals_ = 0;
};

}  // namespace solvflow
