// Compares the serial and OpenMP batch drivers on the same workload: the
// theorem suite and axiom batteries over the standard instance families.
// The parallel driver must produce byte-identical results; only wall time
// differs.

#include <semistar/oracle.hpp>
#include <semistar/parse.hpp>

#include <chrono>
#include <iostream>

#ifdef SEMISTAR_OPENMP
#include <omp.h>
#endif

using namespace semistar;

namespace {

struct item {
    std::string d, s;
};

std::vector<item> workload() {
    return {
        {"divisor(n=3)", "w"},
        {"divisor(n=3)", "spectral[max\\P2]"},
        {"quadratic(d=-3,f=2)", "theta"},
        {"quadratic(d=-3,f=2)", "star[OK]"},
        {"quadratic(d=-1,f=1)", "t"},
        {"pullback(field k=Q,K=Q(i))", "star[T]"},
        {"pullback(order d=-3,f=2)", "star[T]"},
        {"cusp(K=Q)", "pull(t,T)"},
    };
}

std::vector<std::string> run_serial(const std::vector<item>& w, const sample_plan& p) {
    std::vector<std::string> sig(w.size());
    for (size_t i = 0; i < w.size(); i++) {
        domain d0 = parse_domain(w[i].d);
        star s = parse_op(d0, w[i].s);
        suite_result r = run_theorem_suite(op_domain(d0, s), s, p);
        std::string acc = r.domain_name + "|" + r.star_name;
        for (auto& row : r.rows)
            acc += "|" + row.id + ":" + std::to_string(row.agree) + "/" +
                   std::to_string(row.instances);
        sig[i] = acc;
    }
    return sig;
}

std::vector<std::string> run_parallel(const std::vector<item>& w, const sample_plan& p) {
    std::vector<std::string> sig(w.size());
#ifdef SEMISTAR_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < w.size(); i++) {
        domain d0 = parse_domain(w[i].d);
        star s = parse_op(d0, w[i].s);
        suite_result r = run_theorem_suite(op_domain(d0, s), s, p);
        std::string acc = r.domain_name + "|" + r.star_name;
        for (auto& row : r.rows)
            acc += "|" + row.id + ":" + std::to_string(row.agree) + "/" +
                   std::to_string(row.instances);
        sig[i] = acc;
    }
    return sig;
}

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main(int argc, char** argv) {
    sample_plan p;
    p.n_random = (argc > 1) ? std::atoi(argv[1]) : 40;
    auto w = workload();

    auto t0 = std::chrono::steady_clock::now();
    auto s1 = run_serial(w, p);
    auto t1 = std::chrono::steady_clock::now();
    auto s2 = run_parallel(w, p);
    auto t2 = std::chrono::steady_clock::now();

    if (s1 != s2) {
        std::cerr << "parallel driver diverged from the serial reference\n";
        return 1;
    }
    double serial = seconds(t0, t1), parallel = seconds(t1, t2);
    std::cout << "workload: " << w.size() << " theorem-suite instances, samples="
              << p.n_random << "\n";
#ifdef SEMISTAR_OPENMP
    std::cout << "threads:  " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads:  1 (OpenMP disabled)\n";
#endif
    std::cout << "serial:   " << serial << " s\n";
    std::cout << "parallel: " << parallel << " s\n";
    std::cout << "speedup:  " << (parallel > 0 ? serial / parallel : 0.0) << "x\n";
    std::cout << "results identical: yes\n";
    return 0;
}
