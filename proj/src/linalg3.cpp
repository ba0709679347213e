#include "segode/linalg3.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "segode/error.hpp"

namespace segode {

namespace {

void require_nonsingular(const Eigen::Matrix3cd& sigma) {
    const double norm = sigma.norm();
    const double det = std::abs(sigma.determinant());
    if (norm == 0.0 || det < kSingularTolerance * norm * norm * norm) {
        std::ostringstream os;
        os << "|det| = " << det << " against norm " << norm;
        throw Error(ErrorKind::Singular, os.str());
    }
}

} // namespace

CentralizerReport centralizer(const Eigen::Matrix3cd& sigma) {
    require_nonsingular(sigma);
    // Column-major vec: vec(Xσ − σX) = (σᵀ ⊗ I − I ⊗ σ) vec(X).
    const Eigen::Matrix3cd id = Eigen::Matrix3cd::Identity();
    const Eigen::Matrix<std::complex<double>, 9, 9> op =
        Eigen::kroneckerProduct(sigma.transpose(), id) - Eigen::kroneckerProduct(id, sigma);
    const Eigen::JacobiSVD<Eigen::Matrix<std::complex<double>, 9, 9>> svd(op);
    const auto& sv = svd.singularValues();
    // The operator vanishes for scalar σ; measure against σ itself so the
    // threshold stays meaningful.
    const double reference = std::max(sv(0), sigma.norm());
    const double threshold = kRankTolerance * reference;

    CentralizerReport r;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) {
            ++rank;
            r.smallest_kept = sv(i);
        } else {
            r.largest_dropped = std::max(r.largest_dropped, sv(i));
        }
        if (sv(i) > threshold / 10.0 && sv(i) < threshold * 10.0) {
            r.near_boundary = true;
        }
    }
    r.dim = 9 - rank;
    return r;
}

int centralizer_dim(const Eigen::Matrix3cd& sigma) { return centralizer(sigma).dim; }

bool is_scalar(const Eigen::Matrix3cd& sigma) {
    const Eigen::Matrix3cd centred = sigma - (sigma.trace() / 3.0) * Eigen::Matrix3cd::Identity();
    return centred.norm() < kScalarTolerance * sigma.norm();
}

HolBound hol_dim_bound(const Eigen::Matrix3cd& sigma) {
    HolBound h;
    h.dim_gl = centralizer_dim(sigma);
    h.is_identity = is_scalar(sigma);
    h.bound = h.is_identity ? 8 : h.dim_gl - 1;
    return h;
}

} // namespace segode
