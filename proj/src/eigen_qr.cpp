#include "vaxfront/eigen_qr.hpp"

#include "vaxfront/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vaxfront {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

// Row/column scaling by powers of two until row and column norms balance.
void balance(Matrix& a)
{
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    const auto n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            }
            if (c == 0.0 || r == 0.0) {
                continue;
            }
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

// Gaussian elimination with pivoting to upper Hessenberg form (a similarity).
void reduce_to_hessenberg(Matrix& a)
{
    const auto n = a.rows();
    for (Eigen::Index m = 1; m < n - 1; ++m) {
        double x = 0.0;
        Eigen::Index pivot = m;
        for (Eigen::Index j = m; j < n; ++j) {
            if (std::abs(a(j, m - 1)) > std::abs(x)) {
                x = a(j, m - 1);
                pivot = j;
            }
        }
        if (pivot != m) {
            for (Eigen::Index j = m - 1; j < n; ++j) {
                std::swap(a(pivot, j), a(m, j));
            }
            for (Eigen::Index j = 0; j < n; ++j) {
                std::swap(a(j, pivot), a(j, m));
            }
        }
        if (x == 0.0) {
            continue;
        }
        for (Eigen::Index i = m + 1; i < n; ++i) {
            double y = a(i, m - 1);
            if (y == 0.0) {
                continue;
            }
            y /= x;
            a(i, m - 1) = 0.0;
            for (Eigen::Index j = m; j < n; ++j) {
                a(i, j) -= y * a(m, j);
            }
            for (Eigen::Index j = 0; j < n; ++j) {
                a(j, m) += y * a(j, i);
            }
        }
    }
}

// Francis double-shift QR on an upper Hessenberg matrix (1-based internally).
std::vector<std::complex<double>> hessenberg_qr(Matrix& h)
{
    const int n = static_cast<int>(h.rows());
    auto a = [&h](int i, int j) -> double& { return h(i - 1, j - 1); };
    std::vector<double> wr(n + 1, 0.0);
    std::vector<double> wi(n + 1, 0.0);

    double anorm = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::max(i - 1, 1); j <= n; ++j) {
            anorm += std::abs(a(i, j));
        }
    }
    const long long sweep_cap = 100LL * n * n;
    long long sweeps = 0;

    int nn = n;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;
    while (nn >= 1) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 2; --l) {
                s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) {
                    s = anorm;
                }
                if (std::abs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn--] = 0.0;
            } else {
                y = a(nn - 1, nn - 1);
                w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) {
                            wr[nn] = x - w / z;
                        }
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn - 1] = -(wi[nn] = z);
                    }
                    nn -= 2;
                } else {
                    if (its >= 60 || ++sweeps > sweep_cap) {
                        throw NonConvergence("Hessenberg QR did not converge");
                    }
                    if (its == 10 || its == 20 || its == 40) {
                        // exceptional shift
                        t += x;
                        for (int i = 1; i <= nn; ++i) {
                            a(i, i) -= x;
                        }
                        s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    for (; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) {
                            break;
                        }
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                        if (u <= kEps * v) {
                            break;
                        }
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) {
                            a(i, i - 3) = 0.0;
                        }
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) {
                                r = a(k + 2, k - 1);
                            }
                            if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        if ((s = sign_of(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
                            if (k == m) {
                                if (l != m) {
                                    a(k, k - 1) = -a(k, k - 1);
                                }
                            } else {
                                a(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = a(k, j) + q * a(k + 1, j);
                                if (k != nn - 1) {
                                    p += r * a(k + 2, j);
                                    a(k + 2, j) -= p * z;
                                }
                                a(k + 1, j) -= p * y;
                                a(k, j) -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * a(i, k) + y * a(i, k + 1);
                                if (k != nn - 1) {
                                    p += z * a(i, k + 2);
                                    a(i, k + 2) -= p * r;
                                }
                                a(i, k + 1) -= p * q;
                                a(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }

    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) {
        out.emplace_back(wr[i], wi[i]);
    }
    return out;
}

} // namespace

std::vector<std::complex<double>> hessenberg_qr_eigenvalues(const Matrix& input)
{
    if (input.rows() != input.cols()) {
        throw DimensionMismatch("eigenvalues need a square matrix");
    }
    for (Eigen::Index i = 0; i < input.size(); ++i) {
        if (!std::isfinite(input.data()[i])) {
            throw ValidationError("matrix has non-finite entries");
        }
    }
    const auto n = input.rows();
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {std::complex<double>(input(0, 0), 0.0)};
    }
    Matrix a = input;
    balance(a);
    reduce_to_hessenberg(a);
    return hessenberg_qr(a);
}

std::vector<double> jacobi_eigenvalues(const Matrix& input)
{
    const auto n = input.rows();
    Matrix a = 0.5 * (input + input.transpose());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                off += a(i, j) * a(i, j);
            }
        }
        if (off <= kEps * kEps * std::max(1e-300, a.squaredNorm()) * 1e-4) {
            break;
        }
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = sign_of(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = a(i, i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace vaxfront
