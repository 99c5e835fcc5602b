#include "kickrot/mathieu.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kickrot {

namespace {

bool is_sine(MathieuClass c) {
    return c == MathieuClass::SeOdd || c == MathieuClass::SeEven;
}

int class_parity(MathieuClass c) {
    return (c == MathieuClass::CeEven || c == MathieuClass::SeEven) ? +1 : -1;
}

// cos(m a0), sin(m a0), exact for the quarter-turn shift.
std::pair<double, double> harmonic_phase(int m, double alpha0) {
    if (alpha0 == 0.0) return {1.0, 0.0};
    if (alpha0 == pi / 2.0) {
        switch (m % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return {std::cos(m * alpha0), std::sin(m * alpha0)};
}

void validate(const MathieuProblem& p) {
    if (!std::isfinite(p.v)) throw std::invalid_argument("mathieu: v must be finite");
    if (p.K < 8) throw std::invalid_argument("mathieu: K must be >= 8, got " + std::to_string(p.K));
    if (p.alpha0 != 0.0 && p.alpha0 != pi / 2.0)
        throw std::invalid_argument("mathieu: alpha0 must be 0 or pi/2");
}

struct Candidate {
    double eps;
    MathieuClass cls;
    int index;  // eigenvector index within the class
};

}  // namespace

std::string to_string(MathieuClass c) {
    switch (c) {
        case MathieuClass::CeEven: return "ce-even";
        case MathieuClass::SeOdd: return "se-odd";
        case MathieuClass::CeOdd: return "ce-odd";
        case MathieuClass::SeEven: return "se-even";
    }
    return "?";
}

int class_harmonic(MathieuClass c, int j) {
    switch (c) {
        case MathieuClass::CeEven: return 2 * j;
        case MathieuClass::SeOdd:
        case MathieuClass::CeOdd: return 2 * j + 1;
        case MathieuClass::SeEven: return 2 * j + 2;
    }
    return -1;
}

Eigen::MatrixXd assemble_recurrence_matrix(const MathieuProblem& problem, MathieuClass cls) {
    if (problem.K < 2)
        throw std::invalid_argument("recurrence matrix needs K >= 2, got " + std::to_string(problem.K));
    const int n = problem.K + 1;
    const double v = problem.v;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const double h = class_harmonic(cls, j);
        m(j, j) = h * h;
        if (j + 1 < n) {
            m(j, j + 1) = v;
            m(j + 1, j) = v;
        }
    }
    // Lowest row: 2v cos2a acting on the bottom harmonic folds back onto itself
    // (odd classes) or onto the constant term (ce-even).
    switch (cls) {
        case MathieuClass::CeEven:
            if (n > 1) {
                m(0, 1) = std::sqrt(2.0) * v;
                m(1, 0) = std::sqrt(2.0) * v;
            }
            break;
        case MathieuClass::CeOdd: m(0, 0) += v; break;
        case MathieuClass::SeOdd: m(0, 0) -= v; break;
        case MathieuClass::SeEven: break;
    }
    return m;
}

OneCoordinateBasis solve_basis(const MathieuProblem& problem, int levels) {
    validate(problem);
    if (levels < 1 || levels > 2 * problem.K)
        throw std::invalid_argument("solve_basis: level count must be in [1, 2K], got " +
                                    std::to_string(levels));

    const int n = problem.K + 1;
    std::vector<Candidate> candidates;
    Eigen::MatrixXd vectors[4];
    for (int c = 0; c < 4; ++c) {
        const MathieuClass cls = all_mathieu_classes[c];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(assemble_recurrence_matrix(problem, cls));
        if (es.info() != Eigen::Success) {
            std::ostringstream msg;
            msg << "mathieu eigensolver did not converge for class " << to_string(cls)
                << " at v = " << problem.v;
            throw SolverError(msg.str());
        }
        vectors[c] = es.eigenvectors();
        for (int k = 0; k < n; ++k) candidates.push_back({es.eigenvalues()(k), cls, k});
    }
    // Degenerate pairs (v = 0) list the cosine partner first.
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.eps != b.eps) return a.eps < b.eps;
        return !is_sine(a.cls) && is_sine(b.cls);
    });

    OneCoordinateBasis basis;
    basis.problem = problem;
    basis.max_harmonic = 2 * problem.K + 2;
    const int rows = basis.max_harmonic + 1;
    basis.cos_coeffs = Eigen::MatrixXd::Zero(rows, levels);
    basis.sin_coeffs = Eigen::MatrixXd::Zero(rows, levels);

    for (int l = 0; l < levels; ++l) {
        const Candidate& cand = candidates[l];
        const int c = static_cast<int>(cand.cls);
        Eigen::VectorXd u = vectors[c].col(cand.index);

        // ce: f(0) > 0;  se: f'(0) > 0
        double probe = 0.0;
        for (int j = 0; j < n; ++j) {
            const int h = class_harmonic(cand.cls, j);
            if (is_sine(cand.cls))
                probe += h * u(j);
            else
                probe += (h == 0 ? u(j) / std::sqrt(2.0) : u(j));
        }
        if (probe < 0.0) u = -u;

        for (int j = 0; j < n; ++j) {
            const int h = class_harmonic(cand.cls, j);
            const auto [ch, sh] = harmonic_phase(h, problem.alpha0);
            // f(a + a0): cos h(a+a0) = cos ha cos ha0 - sin ha sin ha0
            //            sin h(a+a0) = sin ha cos ha0 + cos ha sin ha0
            if (is_sine(cand.cls)) {
                basis.sin_coeffs(h, l) += u(j) * ch;
                if (h != 0) basis.cos_coeffs(h, l) += u(j) * sh;
            } else {
                basis.cos_coeffs(h, l) += u(j) * ch;
                if (h != 0) basis.sin_coeffs(h, l) -= u(j) * sh;
            }
        }
        basis.eigenvalues.push_back(cand.eps);
        basis.class_labels.push_back(cand.cls);
        basis.translation_parity.push_back(class_parity(cand.cls));
    }
    return basis;
}

std::vector<double> evaluate_basis(const OneCoordinateBasis& basis, int level,
                                   std::span<const double> alphas) {
    if (level < 0 || level >= basis.level_count())
        throw std::out_of_range("evaluate_basis: level " + std::to_string(level) + " out of range");
    const double c0 = 1.0 / std::sqrt(two_pi);
    const double cm = 1.0 / std::sqrt(pi);
    std::vector<double> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        double f = basis.cos_coeffs(0, level) * c0;
        for (int m = 1; m <= basis.max_harmonic; ++m)
            f += cm * (basis.cos_coeffs(m, level) * std::cos(m * a) +
                       basis.sin_coeffs(m, level) * std::sin(m * a));
        out.push_back(f);
    }
    return out;
}

std::vector<double> evaluate_basis_second_derivative(const OneCoordinateBasis& basis, int level,
                                                     std::span<const double> alphas) {
    if (level < 0 || level >= basis.level_count())
        throw std::out_of_range("evaluate_basis: level " + std::to_string(level) + " out of range");
    const double cm = 1.0 / std::sqrt(pi);
    std::vector<double> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        double f = 0.0;
        for (int m = 1; m <= basis.max_harmonic; ++m)
            f -= cm * double(m) * m *
                 (basis.cos_coeffs(m, level) * std::cos(m * a) + basis.sin_coeffs(m, level) * std::sin(m * a));
        out.push_back(f);
    }
    return out;
}

Eigen::MatrixXd tabulate_basis(const OneCoordinateBasis& basis, std::span<const double> alphas) {
    const int n = static_cast<int>(alphas.size());
    const int rows = basis.max_harmonic + 1;
    Eigen::MatrixXd cos_table(n, rows), sin_table(n, rows);
    for (int i = 0; i < n; ++i) {
        cos_table(i, 0) = 1.0 / std::sqrt(two_pi);
        sin_table(i, 0) = 0.0;
        for (int m = 1; m < rows; ++m) {
            cos_table(i, m) = std::cos(m * alphas[i]) / std::sqrt(pi);
            sin_table(i, m) = std::sin(m * alphas[i]) / std::sqrt(pi);
        }
    }
    return cos_table * basis.cos_coeffs + sin_table * basis.sin_coeffs;
}

GridEigenpairs fourier_grid_oracle(const MathieuProblem& problem, int n) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("fourier_grid_oracle: n must be even and >= 8");
    GridEigenpairs out;
    out.grid = periodic_grid(n);
    const int half = n / 2;
    // Kinetic part of the eps operator (2 x [-1/2 d^2]): plane waves k = -n/2+1 .. n/2.
    std::vector<double> kinetic_row(n);
    for (int d = 0; d < n; ++d) {
        const double delta = two_pi * d / n;
        double s = 0.0;
        for (int k = 1; k < half; ++k) s += 2.0 * double(k) * k * std::cos(k * delta);
        s += double(half) * half * std::cos(half * delta);
        kinetic_row[d] = s / n;
    }
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = kinetic_row[std::abs(i - j)];
    for (int i = 0; i < n; ++i) h(i, i) += 2.0 * problem.v * std::cos(2.0 * (out.grid[i] + problem.alpha0));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw SolverError("fourier grid eigensolver did not converge");
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    out.vectors = es.eigenvectors() / std::sqrt(two_pi / n);
    return out;
}

void write_basis_csv(const OneCoordinateBasis& basis, std::ostream& out) {
    out << "class,level,epsilon,m,cos_coeff,sin_coeff\n";
    out.precision(17);
    for (int l = 0; l < basis.level_count(); ++l)
        for (int m = 0; m <= basis.max_harmonic; ++m) {
            const double c = basis.cos_coeffs(m, l), s = basis.sin_coeffs(m, l);
            if (c == 0.0 && s == 0.0) continue;
            out << to_string(basis.class_labels[l]) << ',' << l << ',' << basis.eigenvalues[l] << ',' << m
                << ',' << c << ',' << s << '\n';
        }
}

}  // namespace kickrot
