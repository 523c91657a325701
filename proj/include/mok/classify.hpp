#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mok/errors.hpp"
#include "mok/jts.hpp"

namespace mok {

/// An irreducible bounded symmetric domain of rank >= 2, or the unit disc.
/// Valid ranges: I(p,q) with 2 <= p <= q, II(n) with n >= 4, III(n) with
/// n >= 2, IV(n) with n >= 3, V, VI. Higher-dimensional balls are excluded.
/// Canonical form resolves the exceptional isomorphisms
/// IV(3) = III(2), IV(4) = I(2,2), IV(6) = II(4).
struct DomainType {
    Family tag;
    int p = 0, q = 0; // I
    int n = 0;        // II, III, IV

    std::string to_string() const;
    int dim() const;
    bool operator==(const DomainType& o) const;
    bool operator<(const DomainType& o) const;
};

DomainType make_domain(Family tag, int a = 0, int b = 0);
DomainType parse_domain(const std::string& s);
DomainType canonicalize(const DomainType& d);

struct EtaPair {
    int dim_domain;
    int dim_s1; // projective dimension of the first characteristic variety
    bool operator==(const EtaPair& o) const {
        return dim_domain == o.dim_domain && dim_s1 == o.dim_s1;
    }
};

/// The dimension table: I(p,q) -> (pq, p+q-2), II(n) -> (n(n-1)/2, 2(n-2)),
/// III(n) -> (n(n+1)/2, n-1), IV(n) -> (n, n-2), V -> (16,10), VI -> (27,16).
/// Throws DiscHasNoS1Error for the disc.
EtaPair eta(const DomainType& d);

/// Unique canonical domain with the given pair, std::nullopt when no valid
/// domain matches. Solves the table equations exactly in integers. Throws
/// AmbiguousPairError when two non-isomorphic domains share the pair (the
/// smallest such collision is (45,16), shared by I(3,15) and II(10)).
std::optional<DomainType> eta_inverse(const EtaPair& pair);

/// Groups of distinct domains with dim <= max_dim sharing an eta pair. With
/// canonicalization the list is empty through dimension 44; without it the
/// three exceptional isomorphisms appear.
std::vector<std::vector<DomainType>> collect_eta_collisions(int max_dim, bool canonical);
std::vector<std::vector<DomainType>> verify_injectivity(int max_dim);

/// All valid canonical domains with dim <= max_dim.
std::vector<DomainType> enumerate_domains(int max_dim, bool canonical = true);

struct ProductDomain {
    std::vector<DomainType> factors; // kept sorted in canonical order
    std::string to_string() const;
    bool operator==(const ProductDomain& o) const { return factors == o.factors; }
};

ProductDomain make_product_domain(std::vector<DomainType> factors);

/// Recover the universal covering from pairs (affine cone dim, block dim):
/// (0,1) is the disc, otherwise the pair must be (dim_s1 + 1, dim_domain) of
/// a unique rank >= 2 domain. Throws UnrecognizedPairError otherwise (a ball
/// factor or invalid input).
ProductDomain recover_cover(const std::vector<std::pair<int, int>>& pairs);

} // namespace mok
