#include "mok/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mok {

namespace {

long long isqrt_ll(long long v) {
    if (v < 0) return -1;
    long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

int family_order(Family f) {
    switch (f) {
        case Family::Disc: return 0;
        case Family::I: return 1;
        case Family::II: return 2;
        case Family::III: return 3;
        case Family::IV: return 4;
        case Family::V: return 5;
        case Family::VI: return 6;
    }
    return 7;
}

void validate(const DomainType& d) {
    switch (d.tag) {
        case Family::I:
            if (d.p < 2 || d.q < d.p) throw SpecError("I(p,q) requires 2 <= p <= q");
            return;
        case Family::II:
            if (d.n < 4) throw SpecError("II(n) requires n >= 4");
            return;
        case Family::III:
            if (d.n < 2) throw SpecError("III(n) requires n >= 2");
            return;
        case Family::IV:
            if (d.n < 3) throw SpecError("IV(n) requires n >= 3");
            return;
        case Family::V:
        case Family::VI:
        case Family::Disc:
            return;
    }
}

} // namespace

std::string DomainType::to_string() const {
    switch (tag) {
        case Family::I: return "I(" + std::to_string(p) + "," + std::to_string(q) + ")";
        case Family::II: return "II(" + std::to_string(n) + ")";
        case Family::III: return "III(" + std::to_string(n) + ")";
        case Family::IV: return "IV(" + std::to_string(n) + ")";
        case Family::V: return "V";
        case Family::VI: return "VI";
        case Family::Disc: return "D";
    }
    return "?";
}

int DomainType::dim() const {
    switch (tag) {
        case Family::I: return p * q;
        case Family::II: return n * (n - 1) / 2;
        case Family::III: return n * (n + 1) / 2;
        case Family::IV: return n;
        case Family::V: return 16;
        case Family::VI: return 27;
        case Family::Disc: return 1;
    }
    return 0;
}

bool DomainType::operator==(const DomainType& o) const {
    return tag == o.tag && p == o.p && q == o.q && n == o.n;
}

bool DomainType::operator<(const DomainType& o) const {
    if (family_order(tag) != family_order(o.tag)) return family_order(tag) < family_order(o.tag);
    if (p != o.p) return p < o.p;
    if (q != o.q) return q < o.q;
    return n < o.n;
}

DomainType make_domain(Family tag, int a, int b) {
    DomainType d{tag, 0, 0, 0};
    switch (tag) {
        case Family::I:
            d.p = std::min(a, b);
            d.q = std::max(a, b);
            break;
        case Family::II:
        case Family::III:
        case Family::IV:
            d.n = a;
            break;
        default:
            break;
    }
    validate(d);
    return d;
}

DomainType parse_domain(const std::string& s) {
    Jts j = make_jts(s); // reuse the family grammar
    switch (j.family()) {
        case Family::I: return make_domain(Family::I, j.p(), j.q());
        case Family::II: return make_domain(Family::II, j.n());
        case Family::III: return make_domain(Family::III, j.n());
        case Family::IV: return make_domain(Family::IV, j.n());
        case Family::V: return make_domain(Family::V);
        case Family::VI: return make_domain(Family::VI);
        case Family::Disc: return make_domain(Family::Disc);
    }
    throw ParseError("unknown domain: " + s);
}

DomainType canonicalize(const DomainType& d) {
    if (d.tag == Family::IV) {
        if (d.n == 3) return make_domain(Family::III, 2);
        if (d.n == 4) return make_domain(Family::I, 2, 2);
        if (d.n == 6) return make_domain(Family::II, 4);
    }
    if (d.tag == Family::I && d.p > d.q) return make_domain(Family::I, d.q, d.p);
    return d;
}

EtaPair eta(const DomainType& d) {
    switch (d.tag) {
        case Family::I: return {d.p * d.q, d.p + d.q - 2};
        case Family::II: return {d.n * (d.n - 1) / 2, 2 * (d.n - 2)};
        case Family::III: return {d.n * (d.n + 1) / 2, d.n - 1};
        case Family::IV: return {d.n, d.n - 2};
        case Family::V: return {16, 10};
        case Family::VI: return {27, 16};
        case Family::Disc:
            throw DiscHasNoS1Error("the disc has no first characteristic variety entry");
    }
    throw SpecError("invalid domain");
}

std::optional<DomainType> eta_inverse(const EtaPair& pair) {
    const int d = pair.dim_domain, s = pair.dim_s1;
    std::vector<DomainType> hits;
    auto push = [&hits](DomainType t) {
        DomainType c = canonicalize(t);
        if (std::find(hits.begin(), hits.end(), c) == hits.end()) hits.push_back(c);
    };

    // I(p,q): pq = d, p + q = s + 2
    {
        const long long sum = s + 2;
        const long long disc = sum * sum - 4LL * d;
        if (disc >= 0) {
            const long long r = isqrt_ll(disc);
            if (r * r == disc && (sum - r) % 2 == 0) {
                const long long p = (sum - r) / 2, q = (sum + r) / 2;
                if (p >= 2 && p <= q && p * q == d) push(make_domain(Family::I, static_cast<int>(p), static_cast<int>(q)));
            }
        }
    }
    // II(n): n(n-1)/2 = d, 2(n-2) = s
    {
        const long long disc = 1 + 8LL * d;
        const long long r = isqrt_ll(disc);
        if (r * r == disc && (1 + r) % 2 == 0) {
            const long long n = (1 + r) / 2;
            if (n >= 4 && 2 * (n - 2) == s) push(make_domain(Family::II, static_cast<int>(n)));
        }
    }
    // III(n): n(n+1)/2 = d, n - 1 = s
    {
        const long long n = s + 1;
        if (n >= 2 && n * (n + 1) / 2 == d) push(make_domain(Family::III, static_cast<int>(n)));
    }
    // IV(n): n = d, n - 2 = s
    if (d >= 3 && s == d - 2) push(make_domain(Family::IV, d));
    if (d == 16 && s == 10) push(make_domain(Family::V));
    if (d == 27 && s == 16) push(make_domain(Family::VI));

    if (hits.empty()) return std::nullopt;
    if (hits.size() > 1) {
        std::string msg = "eta pair (" + std::to_string(d) + "," + std::to_string(s) + ") is ambiguous:";
        for (const auto& h : hits) msg += " " + h.to_string();
        throw AmbiguousPairError(msg);
    }
    return hits.front();
}

std::vector<DomainType> enumerate_domains(int max_dim, bool canonical) {
    std::vector<DomainType> out;
    for (int p = 2; p * p <= max_dim; ++p)
        for (int q = p; p * q <= max_dim; ++q) out.push_back(make_domain(Family::I, p, q));
    for (int n = 4; n * (n - 1) / 2 <= max_dim; ++n) out.push_back(make_domain(Family::II, n));
    for (int n = 2; n * (n + 1) / 2 <= max_dim; ++n) out.push_back(make_domain(Family::III, n));
    for (int n = 3; n <= max_dim; ++n) out.push_back(make_domain(Family::IV, n));
    if (16 <= max_dim) out.push_back(make_domain(Family::V));
    if (27 <= max_dim) out.push_back(make_domain(Family::VI));
    if (canonical) {
        for (auto& d : out) d = canonicalize(d);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    } else {
        std::sort(out.begin(), out.end());
    }
    return out;
}

std::vector<std::vector<DomainType>> collect_eta_collisions(int max_dim, bool canonical) {
    std::map<std::pair<int, int>, std::vector<DomainType>> groups;
    for (const auto& d : enumerate_domains(max_dim, canonical)) {
        EtaPair e = eta(d);
        groups[{e.dim_domain, e.dim_s1}].push_back(d);
    }
    std::vector<std::vector<DomainType>> collisions;
    for (auto& [key, members] : groups)
        if (members.size() >= 2) collisions.push_back(members);
    return collisions;
}

std::vector<std::vector<DomainType>> verify_injectivity(int max_dim) {
    if (max_dim < 3) throw SpecError("verify_injectivity: max_dim must be >= 3");
    return collect_eta_collisions(max_dim, true);
}

std::string ProductDomain::to_string() const {
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " x ";
        out += factors[i].to_string();
    }
    return out;
}

ProductDomain make_product_domain(std::vector<DomainType> factors) {
    for (auto& f : factors) f = canonicalize(f);
    std::sort(factors.begin(), factors.end());
    return ProductDomain{std::move(factors)};
}

ProductDomain recover_cover(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<DomainType> factors;
    for (const auto& [cone_dim, block_dim] : pairs) {
        if (cone_dim < 0 || block_dim < 1 || cone_dim > block_dim)
            throw UnrecognizedPairError("invalid pair (" + std::to_string(cone_dim) + "," +
                                        std::to_string(block_dim) + ")");
        if (cone_dim == 0 && block_dim == 1) {
            factors.push_back(make_domain(Family::Disc));
            continue;
        }
        if (cone_dim == 0)
            throw UnrecognizedPairError("pair (0," + std::to_string(block_dim) +
                                        ") matches no domain (zero cone on dim > 1)");
        auto hit = eta_inverse(EtaPair{block_dim, cone_dim - 1});
        if (!hit)
            throw UnrecognizedPairError("pair (" + std::to_string(cone_dim) + "," +
                                        std::to_string(block_dim) +
                                        ") matches no rank >= 2 domain and is not a disc pair");
        factors.push_back(*hit);
    }
    return make_product_domain(std::move(factors));
}

} // namespace mok
