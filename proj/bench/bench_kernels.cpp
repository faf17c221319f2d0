// Serial reference vs OpenMP kernels. Usage: incite_bench [repeats]

#include "incite/kernels.hpp"
#include "incite/sparse.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

using namespace incite;
namespace k = incite::kernels;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
    fmt::print("{:<22} serial {:9.4f} s   parallel {:9.4f} s   speedup {:5.2f}x   {}\n", name, serial, parallel,
               serial / parallel, identical ? "identical" : "MISMATCH");
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t nnz) {
    std::uniform_int_distribution<std::uint32_t> node(0, static_cast<std::uint32_t>(n - 1));
    std::uniform_real_distribution<double> value(0.1, 1.0);
    std::vector<Triplet> t;
    t.reserve(nnz);
    for (std::size_t i = 0; i < nnz; ++i) {
        t.push_back({node(rng), node(rng), value(rng)});
    }
    return SparseMatrix(n, n, std::move(t));
}

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    fmt::print("threads: {}\n", omp_get_max_threads());
    std::mt19937_64 rng(7);

    {
        const auto m = random_matrix(rng, 100000, 1000000);
        std::vector<double> x(m.cols());
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& v : x) {
            v = u(rng);
        }
        std::vector<double> ys(m.rows());
        std::vector<double> yp(m.rows());
        const double s = best_of(repeats, [&] { k::serial::spmv(m.view(), x, ys); });
        const double p = best_of(repeats, [&] { k::parallel::spmv(m.view(), x, yp); });
        report("spmv 100k/1M", s, p, ys == yp);
    }
    {
        const auto m = random_matrix(rng, 3000, 15000);
        std::vector<double> hs;
        std::vector<double> hp;
        const double s = best_of(repeats, [&] { hs = k::serial::harmonic_closeness(m.view()); });
        const double p = best_of(repeats, [&] { hp = k::parallel::harmonic_closeness(m.view()); });
        report("closeness 3k/15k", s, p, hs == hp);
    }
    {
        const std::size_t n = 5000;
        std::vector<double> v(n);
        std::lognormal_distribution<double> ln(0.0, 1.0);
        for (auto& x : v) {
            x = ln(rng);
        }
        std::sort(v.begin(), v.end());
        k::JenksPrefix prefix;
        prefix.weight.assign(n + 1, 0.0);
        prefix.sum.assign(n + 1, 0.0);
        prefix.sum_sq.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            prefix.weight[i + 1] = prefix.weight[i] + 1.0;
            prefix.sum[i + 1] = prefix.sum[i] + v[i];
            prefix.sum_sq[i + 1] = prefix.sum_sq[i] + v[i] * v[i];
        }
        std::vector<double> prev(n + 1, 1e300);
        for (std::size_t j = 1; j <= n; ++j) {
            prev[j] = prefix.sse(0, j);
        }
        std::vector<double> cs(n + 1, 1e300);
        std::vector<double> cp(n + 1, 1e300);
        std::vector<std::size_t> ss(n + 1);
        std::vector<std::size_t> sp(n + 1);
        const double s = best_of(repeats, [&] { k::serial::jenks_layer(prefix, 2, prev, cs, ss); });
        const double p = best_of(repeats, [&] { k::parallel::jenks_layer(prefix, 2, prev, cp, sp); });
        report("jenks layer n=5000", s, p, cs == cp && ss == sp);
    }
    {
        const std::size_t rows = 50000;
        const std::size_t dim = 100;
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<double> data(rows * dim);
        for (std::size_t r = 0; r < rows; ++r) {
            double norm = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                data[r * dim + c] = g(rng);
                norm += data[r * dim + c] * data[r * dim + c];
            }
            for (std::size_t c = 0; c < dim; ++c) {
                data[r * dim + c] /= std::sqrt(norm);
            }
        }
        std::vector<std::size_t> probe{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
        std::vector<char> member(rows, 0);
        std::vector<char> fs(rows, 0);
        std::vector<char> fp(rows, 0);
        const double s = best_of(repeats, [&] { k::serial::mark_similar(data, dim, probe, member, 0.3, fs); });
        const double p = best_of(repeats, [&] { k::parallel::mark_similar(data, dim, probe, member, 0.3, fp); });
        report("mark_similar 50k x100", s, p, fs == fp);
    }
    {
        std::vector<double> v(2000);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& x : v) {
            x = u(rng);
        }
        std::vector<double> bs;
        std::vector<double> bp;
        const double s = best_of(repeats, [&] { bs = k::serial::bootstrap_medians(v, 2000, 11); });
        const double p = best_of(repeats, [&] { bp = k::parallel::bootstrap_medians(v, 2000, 11); });
        report("bootstrap 2000x2000", s, p, bs == bp);
    }
    return 0;
}
