#include "chessboard/certifier.hpp"

#include "chessboard/parallel.hpp"
#include "chessboard/parity.hpp"

#include <sstream>
#include <stdexcept>

namespace chessboard::cert {

namespace {

struct MembershipProblem {
    grass::Presentation pres;
    std::vector<f2::Poly> gens; // relations + the two index generators
    f2::Poly target;
    int degree = 0;
};

// the sphere-bundle relation t1^d + t1^(d-1) w_1 + ... + w_d
f2::Poly sphere_relation(const grass::Presentation& pres) {
    f2::Poly g = f2::Poly::zero(pres.ring);
    for (int i = 0; i <= pres.d; ++i)
        g += pres.t(1).pow(pres.d - i) * pres.w(i);
    return g;
}

MembershipProblem build_problem(int d, int k, int m, int step, const CertifierOptions& opts) {
    if (d < 1 || k < 1 || m < 0)
        throw std::invalid_argument("certifier: need d >= 1, k >= 1, m >= 0");
    if (step < 0 || step > 4) throw std::invalid_argument("certifier: step out of range");
    const int a = (k + 1) / 2;
    const int b = k / 2;

    MembershipProblem prob;
    prob.pres = grass::build_presentation(d, m, /*with_t=*/true);
    const auto& pres = prob.pres;
    const f2::Poly t1 = pres.t(1);
    const f2::Poly t2 = pres.t(2);

    prob.gens = pres.relations;
    prob.gens.push_back(sphere_relation(pres));
    switch (step) {
    case 0: // original problem
        prob.gens.push_back((t1 + t2).pow(a) * t2.pow(b));
        prob.degree = d + m + k - 2;
        prob.target = t2.pow(prob.degree);
        break;
    case 1: // second factor dropped, target lowered by floor(k/2)
        prob.gens.push_back((t1 + t2).pow(a));
        prob.degree = d + m + a - 2;
        prob.target = t2.pow(prob.degree);
        break;
    case 2: // involution t2 -> t1 + t2 applied to the step-1 problem
        prob.gens.push_back(t2.pow(a));
        prob.degree = d + m + a - 2;
        prob.target = (t1 + t2).pow(prob.degree);
        break;
    case 3: { // binomial target collapsed to its surviving monomial
        prob.gens.push_back(t2.pow(a));
        prob.degree = d + m + a - 2;
        const int scale =
            parity::binom_parity(static_cast<std::uint64_t>(d + m + a - 2),
                                 static_cast<std::uint64_t>(a - 1));
        prob.target = scale == 0 ? f2::Poly::zero(pres.ring)
                                 : t1.pow(d + m - 1) * t2.pow(a - 1);
        break;
    }
    case 4: // bare monomial, without the scalar (never a member)
        prob.gens.push_back(t2.pow(a));
        prob.degree = d + m + a - 2;
        prob.target = t1.pow(d + m - 1) * t2.pow(a - 1);
        break;
    }
    if (prob.degree > opts.max_degree)
        throw std::out_of_range("certifier: slice degree exceeds the configured cap");
    return prob;
}

bool decide(const MembershipProblem& prob) {
    f2::GradedIdealSlice slice(prob.pres.ring, prob.gens, prob.degree);
    return slice.contains(prob.target);
}

} // namespace

IndexProblem make_problem(int d, int k, int m) {
    if (d < 1 || k < 1 || m < 0)
        throw std::invalid_argument("certifier: need d >= 1, k >= 1, m >= 0");
    IndexProblem p;
    p.d = d;
    p.k = k;
    p.m = m;
    p.a = (k + 1) / 2;
    p.b = k / 2;
    p.mass_count = d + m + k - 1;
    p.target_exp = d + m + k - 2;
    return p;
}

bool ideal_member(int d, int k, int m, const CertifierOptions& opts) {
    return decide(build_problem(d, k, m, 0, opts));
}

bool step_transform_member(int d, int k, int m, int step, const CertifierOptions& opts) {
    if (step < 1 || step > 3)
        throw std::invalid_argument("certifier: step must be 1, 2, or 3");
    return decide(build_problem(d, k, m, step, opts));
}

Certificate certify(int d, int k, int m, const CertifierOptions& opts) {
    Certificate c;
    c.problem = make_problem(d, k, m);
    c.member = ideal_member(d, k, m, opts);
    c.certified = !c.member;
    c.stirling_parity = parity::stirling2_parity(c.problem.mass_count, k);
    c.consistent = (c.certified == (c.stirling_parity == 1));
    for (int step = 1; step <= 3; ++step)
        c.step_chain[static_cast<std::size_t>(step - 1)] =
            step_transform_member(d, k, m, step, opts);
    c.step_chain[3] = decide(build_problem(d, k, m, 4, opts));
    return c;
}

std::vector<Certificate> parity_table(int d_max, int k_max, int m_max,
                                      const CertifierOptions& opts) {
    struct Triple { int d, k, m; };
    std::vector<Triple> triples;
    for (int d = 1; d <= d_max; ++d)
        for (int k = 1; k <= k_max; ++k)
            for (int m = 0; m <= m_max; ++m) triples.push_back({d, k, m});
    std::vector<Certificate> out(triples.size());
    parallel_for(triples.size(), resolve_threads(opts.threads), [&](std::size_t i) {
        out[i] = certify(triples[i].d, triples[i].k, triples[i].m, opts);
    });
    return out;
}

std::string to_csv(const std::vector<Certificate>& table) {
    std::ostringstream os;
    os << "d,k,m,n,member,certified,stirling_parity,consistent\n";
    for (const auto& c : table) {
        os << c.problem.d << ',' << c.problem.k << ',' << c.problem.m << ','
           << c.problem.mass_count << ',' << (c.member ? 1 : 0) << ','
           << (c.certified ? 1 : 0) << ',' << c.stirling_parity << ','
           << (c.consistent ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace chessboard::cert
