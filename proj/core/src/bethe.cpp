#include "qhe/bethe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <string>

namespace qhe {

namespace {

constexpr double kPi = std::numbers::pi;

// Residual of the logarithmic Bethe equations for roots k.
Eigen::VectorXd bethe_residual(const Eigen::VectorXd& k, const std::vector<int>& I,
                               double L, double c)
{
    const int n = static_cast<int>(k.size());
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            sum += std::atan((k[i] - k[j]) / c) + std::atan((k[i] + k[j]) / c);
        }
        f[i] = L * k[i] - kPi * I[i] + sum;
    }
    return f;
}

// One Newton solve at fixed coupling, starting from k. Returns sup-norm
// residual reached; k is updated in place.
double newton_solve(Eigen::VectorXd& k, const std::vector<int>& I, double L,
                    double c, double tol, int max_iter)
{
    const int n = static_cast<int>(k.size());
    Eigen::VectorXd f = bethe_residual(k, I, L, c);
    double res = f.lpNorm<Eigen::Infinity>();

    Eigen::MatrixXd jac(n, n);
    for (int iter = 0; iter < max_iter && res > tol; ++iter) {
        for (int i = 0; i < n; ++i) {
            double diag = L;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double am = c / (c * c + (k[i] - k[j]) * (k[i] - k[j]));
                const double ap = c / (c * c + (k[i] + k[j]) * (k[i] + k[j]));
                jac(i, j) = -am + ap;
                diag += am + ap;
            }
            jac(i, i) = diag;
        }
        Eigen::VectorXd step = jac.partialPivLu().solve(f);

        // Backtrack until the residual decreases and ordering/positivity of
        // the roots is preserved.
        double damp = 1.0;
        for (int bt = 0; bt < 50; ++bt) {
            Eigen::VectorXd trial = k - damp * step;
            bool ordered = trial[0] > 0.0;
            for (int i = 1; i < n && ordered; ++i) ordered = trial[i] > trial[i - 1];
            if (ordered) {
                Eigen::VectorXd ft = bethe_residual(trial, I, L, c);
                const double rt = ft.lpNorm<Eigen::Infinity>();
                if (rt < res) {
                    k = trial;
                    f = ft;
                    res = rt;
                    break;
                }
            }
            damp *= 0.5;
        }
    }
    return res;
}

}  // namespace

void GasSpec::validate() const
{
    if (particle_count < 1) throw InvalidInput("GasSpec: particle_count must be >= 1");
    if (!(box_length > 0.0)) throw InvalidInput("GasSpec: box_length must be > 0");
    if (coupling < 0.0) throw InvalidInput("GasSpec: coupling must be >= 0");
}

QuantumNumbers QuantumNumbers::ground_state(int n)
{
    QuantumNumbers qn;
    qn.values.resize(n);
    for (int i = 0; i < n; ++i) qn.values[i] = i + 1;
    return qn;
}

void QuantumNumbers::validate() const
{
    if (values.empty()) throw InvalidInput("QuantumNumbers: empty");
    if (values.front() < 1)
        throw InvalidInput("QuantumNumbers: entries must be >= 1");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw InvalidInput("QuantumNumbers: entries must be strictly increasing");
}

long long QuantumNumbers::square_sum() const
{
    long long s = 0;
    for (int v : values) s += static_cast<long long>(v) * v;
    return s;
}

BetheState solve_bethe_roots(const QuantumNumbers& qn, const GasSpec& spec, double tol)
{
    spec.validate();
    qn.validate();
    if (static_cast<int>(qn.values.size()) != spec.particle_count)
        throw InvalidInput("solve_bethe_roots: quantum number count != particle count");
    if (!(tol > 0.0)) throw InvalidInput("solve_bethe_roots: tol must be > 0");
    if (spec.coupling == 0.0)
        throw UnsupportedLimit(
            "solve_bethe_roots: c = 0 is singular; use the free-boson special case");

    const int n = spec.particle_count;
    const double L = spec.box_length;
    const double c = spec.coupling;

    auto first_order_guess = [&](double coupling) {
        Eigen::VectorXd k(n);
        const double denom = L + 2.0 * (n - 1) / coupling;
        for (int i = 0; i < n; ++i) k[i] = kPi * qn.values[i] / denom;
        return k;
    };

    Eigen::VectorXd k;
    double res;
    const int max_iter = 200;
    const double c_safe = 10.0 * n / L;
    if (c >= c_safe || n == 1) {
        k = first_order_guess(c);
        res = newton_solve(k, qn.values, L, c, tol, max_iter);
    } else {
        // Weak coupling: continuation in c from the safe regime downward.
        k = first_order_guess(c_safe);
        res = newton_solve(k, qn.values, L, c_safe, tol, max_iter);
        double cc = c_safe;
        while (cc > c) {
            cc = std::max(c, cc * 0.6);
            res = newton_solve(k, qn.values, L, cc, tol, max_iter);
        }
    }

    if (!(res <= tol))
        throw SolverError("solve_bethe_roots: Newton iteration did not converge for I = {" +
                              [&] {
                                  std::string s;
                                  for (int v : qn.values) s += std::to_string(v) + " ";
                                  return s;
                              }() +
                              "}",
                          res);

    BetheState state;
    state.quantum_numbers = qn;
    state.roots.assign(k.data(), k.data() + n);
    state.energy = k.squaredNorm();
    state.residual = res;
    return state;
}

double strong_coupling_factor(const GasSpec& spec)
{
    spec.validate();
    if (!(spec.coupling > 0.0))
        throw InvalidInput("strong_coupling_factor: coupling must be > 0");
    const double x = (spec.particle_count - 1) / (spec.coupling * spec.box_length);
    return 1.0 - 4.0 * x + 12.0 * x * x;
}

double strong_coupling_energy(const QuantumNumbers& qn, const GasSpec& spec)
{
    qn.validate();
    const double L = spec.box_length;
    return kPi * kPi * strong_coupling_factor(spec) / (L * L) *
           static_cast<double>(qn.square_sum());
}

std::vector<QuantumNumbers> enumerate_quantum_numbers(const GasSpec& spec,
                                                      double temperature,
                                                      double weight_cutoff,
                                                      std::size_t state_cap)
{
    spec.validate();
    if (!(temperature > 0.0)) throw InvalidInput("enumerate: temperature must be > 0");
    if (!(weight_cutoff > 0.0 && weight_cutoff < 1.0))
        throw InvalidInput("enumerate: weight_cutoff must be in (0,1)");

    const int n = spec.particle_count;
    const double L = spec.box_length;

    // Screening bound: Boltzmann weight from the strong-coupling energy
    // estimate. lambda_c overestimates gaps at weak coupling, so clamp to 1
    // (the Tonks-Girardeau value, an upper bound on the true energy).
    const double lambda = std::min(strong_coupling_factor(spec), 1.0);
    const double rate = kPi * kPi * lambda / (L * L * temperature);

    const QuantumNumbers gs = QuantumNumbers::ground_state(n);
    const long long s_gs = gs.square_sum();

    using Entry = std::pair<long long, std::vector<int>>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    std::set<std::vector<int>> seen;

    frontier.emplace(s_gs, gs.values);
    seen.insert(gs.values);

    std::vector<QuantumNumbers> out;
    while (!frontier.empty()) {
        auto [s, values] = frontier.top();
        frontier.pop();
        if (std::exp(-rate * static_cast<double>(s - s_gs)) < weight_cutoff) break;

        out.push_back(QuantumNumbers{values});
        if (out.size() > state_cap)
            throw ResourceLimit("enumerate: state cap exceeded", out.size());

        for (int i = 0; i < n; ++i) {
            std::vector<int> next = values;
            next[i] += 1;
            if (i + 1 < n && next[i] >= next[i + 1]) continue;
            if (seen.insert(next).second) {
                long long ds = 2LL * values[i] + 1;
                frontier.emplace(s + ds, std::move(next));
            }
        }
    }
    return out;
}

std::vector<BetheState> enumerate_states(const GasSpec& spec, double temperature,
                                         double weight_cutoff, std::size_t state_cap)
{
    std::vector<QuantumNumbers> sets =
        enumerate_quantum_numbers(spec, temperature, weight_cutoff, state_cap);
    std::vector<BetheState> states;
    states.reserve(sets.size());
    for (const QuantumNumbers& qn : sets) states.push_back(solve_bethe_roots(qn, spec));
    std::sort(states.begin(), states.end(),
              [](const BetheState& a, const BetheState& b) { return a.energy < b.energy; });
    return states;
}

}  // namespace qhe
