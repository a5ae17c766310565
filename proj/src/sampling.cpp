#include "qgw/sampling.hpp"

namespace qgw {

PBWElement randomPBW(const Field& f, std::mt19937_64& rng, int maxDegree, int maxTerms) {
    std::uniform_int_distribution<int> nterms(1, maxTerms);
    std::uniform_int_distribution<int> exp(0, maxDegree);
    std::uniform_int_distribution<int> kexp(-maxDegree, maxDegree);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> vexp(-2, 2);
    PBWElement x(f);
    int n = nterms(rng);
    while (static_cast<int>(x.terms().size()) < n) {
        Mono m{exp(rng), kexp(rng), exp(rng)};
        if (m.degree() > maxDegree) continue;
        int c = coef(rng);
        if (c == 0) continue;
        x.add(m, Scalar::integer(f, c) * Scalar::vpow(f, 2 * vexp(rng)));
    }
    return x;
}

}  // namespace qgw
