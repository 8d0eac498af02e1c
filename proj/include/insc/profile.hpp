#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "insc/arrangement.hpp"
#include "insc/errors.hpp"
#include "insc/field.hpp"

namespace insc {

/// Reduced profile of a line arrangement: the n consecutive region angles.
struct Profile {
    std::vector<double> beta;
    std::size_t size() const { return beta.size(); }
};

inline Profile make_profile(std::vector<double> beta, double tol = 1e-9) {
    if (beta.size() < 2) throw InvalidProfile("a profile needs at least two angles");
    double sum = 0;
    for (double b : beta) {
        if (!(b > 0 && b < std::numbers::pi)) throw InvalidProfile("profile angle outside (0, pi): " + std::to_string(b));
        sum += b;
    }
    if (std::fabs(sum - std::numbers::pi) > tol) throw InvalidProfile("profile angles do not sum to pi");
    return Profile{std::move(beta)};
}

/// Angles between consecutive lines, counterclockwise, starting at the line
/// of smallest direction angle in [0, pi).
template <class F>
Profile reduced_profile(const Arrangement<F>& a, double tol = 1e-9) {
    if (a.dim() != 2) throw NotRank2();
    const F& f = a.field();
    constexpr double pi = std::numbers::pi;
    std::vector<double> theta;
    for (const auto& z : a.normals()) {
        double t = std::atan2(f.to_double(z[1]), f.to_double(z[0])) + pi / 2;
        t = std::fmod(t, pi);
        if (t < 0) t += pi;
        theta.push_back(t);
    }
    std::sort(theta.begin(), theta.end());
    std::vector<double> beta;
    for (std::size_t i = 0; i + 1 < theta.size(); ++i) beta.push_back(theta[i + 1] - theta[i]);
    beta.push_back(pi - theta.back() + theta.front());
    return make_profile(std::move(beta), tol);
}

struct ProfileVerdict {
    Verdict verdict = Verdict::no;
    double margin = 0;             // smallest slack of the strict inequalities
    double equality_residual = 0;  // even n: beta_0 + beta_2 + ... - pi/2
};

/// Rank-2 criterion on the reduced profile. Odd n: every cyclic alternating
/// sum is positive. Even n = 2m: beta_0 + beta_2 + ... = pi/2 and
/// sum_{i=1..h} beta_{2i+j} + sum_{i=h+1..m-1} beta_{2i+1+j} < pi/2.
inline ProfileVerdict profile_inscribable(const Profile& p, double tol = 1e-9) {
    const std::size_t n = p.size();
    if (n < 2) throw InvalidProfile("a profile needs at least two angles");
    auto b = [&](std::size_t i) { return p.beta[i % n]; };
    constexpr double half_pi = std::numbers::pi / 2;
    ProfileVerdict out;
    out.margin = INFINITY;
    if (n % 2 == 1) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += (i % 2 == 0 ? 1 : -1) * b(j + i);
            out.margin = std::min(out.margin, s);
        }
    } else {
        const std::size_t m = n / 2;
        double even = 0;
        for (std::size_t i = 0; i < n; i += 2) even += b(i);
        out.equality_residual = even - half_pi;
        for (std::size_t h = 0; h < m; ++h)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0;
                for (std::size_t i = 1; i <= h; ++i) s += b(2 * i + j);
                for (std::size_t i = h + 1; i <= m - 1; ++i) s += b(2 * i + 1 + j);
                out.margin = std::min(out.margin, half_pi - s);
            }
        if (std::fabs(out.equality_residual) > tol) {
            out.verdict = Verdict::no;
            return out;
        }
    }
    if (out.margin > tol) out.verdict = Verdict::yes;
    else if (out.margin < -tol) out.verdict = Verdict::no;
    else out.verdict = Verdict::inconclusive;
    return out;
}

inline void check_face_angles(const std::vector<double>& alpha, double tol) {
    if (alpha.size() < 4 || alpha.size() % 2 == 1) throw InvalidAngles("need an even number (>= 4) of face angles");
    double sum = 0;
    for (double a : alpha) sum += a;
    if (std::fabs(sum - 2 * std::numbers::pi) > tol) throw InvalidAngles("face angles do not sum to 2 pi");
}

/// alpha'_i = alpha'_{n+i} = (alpha_i + alpha_{n+i}) / 2.
inline std::vector<double> symmetrize_face_angles(const std::vector<double>& alpha, double tol = 1e-9) {
    check_face_angles(alpha, tol);
    const std::size_t n = alpha.size() / 2;
    std::vector<double> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) out[i] = out[n + i] = 0.5 * (alpha[i] + alpha[n + i]);
    return out;
}

/// beta_i = (alpha_i + alpha_{i+1}) / 2 for i = 0..n-1.
inline Profile profile_from_face_angles(const std::vector<double>& alpha, double tol = 1e-9) {
    check_face_angles(alpha, tol);
    const std::size_t n = alpha.size() / 2;
    std::vector<double> beta(n);
    for (std::size_t i = 0; i < n; ++i) beta[i] = 0.5 * (alpha[i] + alpha[(i + 1) % (2 * n)]);
    return make_profile(std::move(beta), tol);
}

}  // namespace insc
