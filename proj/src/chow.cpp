#include "blowup/chow.hpp"

#include <sstream>
#include <stdexcept>

namespace blowup {

ChowClass::ChowClass(int n) : n_(n), r0_(0), r_(n, Rat(0)), s_(n - 1, Rat(0)) {
    if (n < 2) throw std::invalid_argument("ChowClass: need n >= 2");
}

ChowClass ChowClass::scalar(int n, const Rat& c) {
    ChowClass x(n);
    x.r0_ = c;
    return x;
}

ChowClass ChowClass::xi_power(int n, int k) {
    ChowClass x(n);
    if (k < 1 || k > n) throw std::invalid_argument("xi_power: k out of range");
    x.r_[k - 1] = 1;
    return x;
}

ChowClass ChowClass::alpha_power(int n, int l) {
    ChowClass x(n);
    if (l < 1 || l > n - 1) throw std::invalid_argument("alpha_power: l out of range");
    x.s_[l - 1] = 1;
    return x;
}

ChowClass ChowClass::divisor(int n, const Rat& p, const Rat& q) {
    ChowClass x(n);
    x.r_[0] = p;
    x.s_[0] = q;
    return x;
}

const Rat& ChowClass::coeff_xi(int k) const {
    if (k < 1 || k > n_) throw std::out_of_range("coeff_xi");
    return r_[k - 1];
}

const Rat& ChowClass::coeff_alpha(int l) const {
    if (l < 1 || l > n_ - 1) throw std::out_of_range("coeff_alpha");
    return s_[l - 1];
}

ChowClass ChowClass::graded_part(int d) const {
    ChowClass x(n_);
    if (d == 0) x.r0_ = r0_;
    if (d >= 1 && d <= n_) x.r_[d - 1] = r_[d - 1];
    if (d >= 1 && d <= n_ - 1) x.s_[d - 1] = s_[d - 1];
    return x;
}

bool ChowClass::is_zero() const {
    if (r0_ != 0) return false;
    for (const auto& c : r_)
        if (c != 0) return false;
    for (const auto& c : s_)
        if (c != 0) return false;
    return true;
}

ChowClass ChowClass::operator+(const ChowClass& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ChowClass: dimension mismatch");
    ChowClass x(n_);
    x.r0_ = r0_ + o.r0_;
    for (int k = 0; k < n_; ++k) x.r_[k] = r_[k] + o.r_[k];
    for (int l = 0; l < n_ - 1; ++l) x.s_[l] = s_[l] + o.s_[l];
    return x;
}

ChowClass ChowClass::operator-(const ChowClass& o) const {
    return *this + o * Rat(-1);
}

ChowClass ChowClass::operator*(const Rat& c) const {
    ChowClass x(n_);
    x.r0_ = r0_ * c;
    for (int k = 0; k < n_; ++k) x.r_[k] = r_[k] * c;
    for (int l = 0; l < n_ - 1; ++l) x.s_[l] = s_[l] * c;
    return x;
}

ChowClass ChowClass::operator*(const ChowClass& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ChowClass: dimension mismatch");
    const int n = n_;
    ChowClass x(n);
    // 1 * anything
    x.r0_ = r0_ * o.r0_;
    for (int k = 1; k <= n; ++k) x.r_[k - 1] = r0_ * o.r_[k - 1] + o.r0_ * r_[k - 1];
    for (int l = 1; l <= n - 1; ++l) x.s_[l - 1] = r0_ * o.s_[l - 1] + o.r0_ * s_[l - 1];
    // xi^k * xi^m = xi^{k+m} (k+m <= n), else 0
    for (int k = 1; k <= n; ++k) {
        if (r_[k - 1] == 0) continue;
        for (int m = 1; m + k <= n; ++m) x.r_[k + m - 1] += r_[k - 1] * o.r_[m - 1];
    }
    // xi^k * alpha^l = xi^{k+l} (k+l <= n), else 0
    for (int k = 1; k <= n; ++k) {
        if (r_[k - 1] == 0) continue;
        for (int l = 1; l + k <= n; ++l) x.r_[k + l - 1] += r_[k - 1] * o.s_[l - 1];
    }
    for (int k = 1; k <= n; ++k) {
        if (o.r_[k - 1] == 0) continue;
        for (int l = 1; l + k <= n; ++l) x.r_[k + l - 1] += o.r_[k - 1] * s_[l - 1];
    }
    // alpha^l * alpha^m = alpha^{l+m} (l+m <= n-1), else 0
    for (int l = 1; l <= n - 1; ++l) {
        if (s_[l - 1] == 0) continue;
        for (int m = 1; m + l <= n - 1; ++m) x.s_[l + m - 1] += s_[l - 1] * o.s_[m - 1];
    }
    return x;
}

ChowClass ChowClass::pow(int k) const {
    ChowClass acc = ChowClass::scalar(n_, 1);
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

bool ChowClass::operator==(const ChowClass& o) const {
    return n_ == o.n_ && (*this - o).is_zero();
}

Rat ChowClass::degree() const { return r_[n_ - 1]; }

ChowClass ChowClass::inverse() const {
    if (r0_ == 0) throw std::domain_error("ChowClass::inverse: zero constant term");
    // Geometric series in the nilpotent part.
    ChowClass u = *this * Rat(1 / r0_);     // 1 + m, m nilpotent
    ChowClass m = u - scalar(n_, 1);
    ChowClass acc = scalar(n_, 1);
    ChowClass mp = scalar(n_, 1);
    for (int k = 1; k <= n_; ++k) {
        mp = mp * m;
        acc = acc + mp * Rat(k % 2 ? -1 : 1);
    }
    return acc * Rat(1 / r0_);
}

std::string ChowClass::str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rat& c, const std::string& mono) {
        if (c == 0) return;
        if (!first) os << " + ";
        first = false;
        if (mono.empty()) {
            os << c.get_str();
        } else if (c == 1) {
            os << mono;
        } else {
            os << c.get_str() << "*" << mono;
        }
    };
    emit(r0_, "");
    for (int k = 1; k <= n_; ++k)
        emit(r_[k - 1], k == 1 ? "xi" : "xi^" + std::to_string(k));
    for (int l = 1; l <= n_ - 1; ++l)
        emit(s_[l - 1], l == 1 ? "a" : "a^" + std::to_string(l));
    if (first) os << "0";
    return os.str();
}

ChowClass chern_tangent(int n) {
    ChowClass one = ChowClass::scalar(n, 1);
    ChowClass a = ChowClass::alpha_power(n, 1);
    ChowClass xi = ChowClass::xi_power(n, 1);
    return (one + a).pow(n) * (one + xi * Rat(2) - a);
}

namespace {

// Coefficients of x/(1-e^{-x}) up to degree n.
std::vector<Rat> todd_series(int n) {
    // g(x) = (1-e^{-x})/x = sum (-1)^k x^k/(k+1)!
    std::vector<Rat> g(n + 1);
    for (int k = 0; k <= n; ++k) {
        g[k] = Rat(Int(k % 2 ? -1 : 1), factorial(k + 1));
    }
    std::vector<Rat> t(n + 1);
    t[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rat acc = 0;
        for (int j = 1; j <= k; ++j) acc += g[j] * t[k - j];
        t[k] = -acc;
    }
    return t;
}

ChowClass eval_series(const std::vector<Rat>& coef, const ChowClass& x) {
    const int n = x.dim();
    ChowClass acc = ChowClass::scalar(n, coef[0]);
    ChowClass xp = ChowClass::scalar(n, 1);
    for (size_t k = 1; k < coef.size(); ++k) {
        xp = xp * x;
        acc = acc + xp * coef[k];
    }
    return acc;
}

}  // namespace

ChowClass todd_tangent(int n) {
    auto td = todd_series(n);
    ChowClass a = ChowClass::alpha_power(n, 1);
    ChowClass xi = ChowClass::xi_power(n, 1);
    return eval_series(td, a).pow(n) * eval_series(td, xi) * eval_series(td, xi - a);
}

ChowClass chern_line(int n, const TwistPair& t) {
    return ChowClass::scalar(n, 1) + ChowClass::divisor(n, t.p, t.q);
}

ChowClass exp_divisor(int n, const Rat& p, const Rat& q) {
    ChowClass d = ChowClass::divisor(n, p, q);
    ChowClass acc = ChowClass::scalar(n, 1);
    ChowClass dp = ChowClass::scalar(n, 1);
    for (int k = 1; k <= n; ++k) {
        dp = dp * d;
        acc = acc + dp * Rat(1, factorial(k));
    }
    return acc;
}

Int chi_line(long p, long q, int n) {
    Rat rising1 = 1, rising2 = 1;
    for (int k = 1; k <= n; ++k) rising1 *= Rat(p + q + k);
    for (int k = 0; k <= n - 1; ++k) rising2 *= Rat(q + k);
    Rat chi = (rising1 - rising2) / Rat(factorial(n));
    if (!is_integer(chi))
        throw std::logic_error("chi_line: non-integral value " + chi.get_str());
    return Int(chi.get_num());
}

Rat hrr_chi(const ChowClass& ch, int n) {
    return (ch * todd_tangent(n)).degree();
}

Polarization Polarization::standard(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("Polarization::standard: defined for odd n >= 3 only");
    long N = (n == 3) ? 1 : (n - 3) / 2;
    return {n, TwistPair{1, N}};
}

Int delta(const TwistPair& theta, const Polarization& L) {
    const int n = L.n;
    ChowClass c1theta = ChowClass::divisor(n, theta.p, theta.q);
    ChowClass c1L = ChowClass::divisor(n, L.twist.p, L.twist.q);
    Rat d = (c1theta * c1L.pow(n - 1)).degree();
    return Int(rat_to_long(d));
}

Rat slope(const ChowClass& c1, long rank, const Polarization& L) {
    if (rank <= 0) throw std::invalid_argument("slope: rank must be positive");
    ChowClass c1L = ChowClass::divisor(L.n, L.twist.p, L.twist.q);
    return (c1 * c1L.pow(L.n - 1)).degree() / Rat(rank);
}

Rat charge(const ChowClass& c2, const Polarization& L) {
    ChowClass c1L = ChowClass::divisor(L.n, L.twist.p, L.twist.q);
    return (c2 * c1L.pow(L.n - 2)).degree();
}

}  // namespace blowup
