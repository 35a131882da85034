"""Signatures and equivalence predicates: range signature, spectral
signature, Gassmann equivalence (plain, strong, uniform), table and
strong table equivalence, Galois conjugacy and similarity.

Cross-representation comparisons promote all spectral and character data
to a common conductor before keying, so equality is decided symbolically.
"""

from __future__ import annotations

from math import gcd, lcm

from .grouplab import FiniteGroup
from .replab import Character, Rep, restrict_rep, spectrum_key


def _common_conductor(*reps_or_chis) -> int:
    c = 1
    for obj in reps_or_chis:
        if isinstance(obj, Rep):
            c = lcm(c, obj.key_conductor)
        else:
            c = lcm(c, obj.key_conductor())
    return c


def range_signature(chi: Character, conductor: int | None = None):
    """Sorted tuple of (value key, level-set size); sizes sum to |G|."""
    kc = conductor or chi.key_conductor()
    counts: dict = {}
    for v in chi.values:
        counts[v.key(kc)] = counts.get(v.key(kc), 0) + 1
    return tuple(sorted(counts.items()))


def spectral_signature(rep: Rep, conductor: int | None = None):
    """Sorted tuple of (block size, block spectrum key) over the level sets
    of the power-trace map."""
    kc = conductor or rep.key_conductor
    out = []
    for block in rep.adams_partition:
        out.append((len(block), spectrum_key(rep, block[0], kc)))
    return tuple(sorted(out))


def ranges_equal(chi1: Character, chi2: Character) -> bool:
    kc = lcm(chi1.key_conductor(), chi2.key_conductor())
    r1 = {v.key(kc) for v in chi1.values}
    r2 = {v.key(kc) for v in chi2.values}
    return r1 == r2


def range_signatures_equal(chi1: Character, chi2: Character) -> bool:
    kc = lcm(chi1.key_conductor(), chi2.key_conductor())
    return range_signature(chi1, kc) == range_signature(chi2, kc)


def gassmann_equivalent(rep1: Rep, rep2: Rep) -> bool:
    if rep1.dim != rep2.dim or rep1.group.order != rep2.group.order:
        return False
    kc = _common_conductor(rep1, rep2)
    return spectral_signature(rep1, kc) == spectral_signature(rep2, kc)


def strong_gassmann(rep1: Rep, rep2: Rep) -> bool:
    """A class-size-preserving bijection matching per-class spectra exists."""
    if rep1.dim != rep2.dim or rep1.group.order != rep2.group.order:
        return False
    kc = _common_conductor(rep1, rep2)

    def class_data(rep):
        cc = rep.group.conjugacy_classes
        return sorted(
            (cc.sizes[i], spectrum_key(rep, cc.representatives[i], kc))
            for i in range(len(cc))
        )

    return class_data(rep1) == class_data(rep2)


def table_equivalent(chi1: Character, chi2: Character) -> bool:
    if chi1.group.table != chi2.group.table:
        raise ValueError("table equivalence is defined over one group")
    kc = lcm(chi1.key_conductor(), chi2.key_conductor())
    v1 = sorted(v.key(kc) for v in chi1.class_values())
    v2 = sorted(v.key(kc) for v in chi2.class_values())
    return v1 == v2


def strongly_table_equivalent(chi1: Character, chi2: Character) -> bool:
    if chi1.group.table != chi2.group.table:
        raise ValueError("table equivalence is defined over one group")
    kc = lcm(chi1.key_conductor(), chi2.key_conductor())
    cc = chi1.group.conjugacy_classes
    d1 = sorted((cc.sizes[i], chi1.class_values()[i].key(kc)) for i in range(len(cc)))
    d2 = sorted((cc.sizes[i], chi2.class_values()[i].key(kc)) for i in range(len(cc)))
    return d1 == d2


def galois_conjugate_reps(rep1: Rep, rep2: Rep) -> int | None:
    """The exponent t with chi2(x) = chi1(x^t) for all x, or None."""
    if rep1.group.table != rep2.group.table:
        raise ValueError("galois conjugacy test expects one underlying group")
    group = rep1.group
    chi1, chi2 = rep1.character, rep2.character
    exp = group.exponent()
    for t in range(1, exp + 1):
        if gcd(t, exp) != 1:
            continue
        if all(chi2.values[g] == chi1.values[group.power(g, t)] for g in range(group.order)):
            return t
    return None


def similar_reps(rep1: Rep, rep2: Rep, gens=None) -> list[int] | None:
    """An automorphism alpha with chi2(alpha(g)) = chi1(g), or None.

    Characters determine complex representations up to equivalence, so the
    search is character-level.
    """
    if rep1.group.table != rep2.group.table:
        iso = rep1.group.find_isomorphism(rep2.group)
        if iso is None:
            return None
        chi1, chi2 = rep1.character, rep2.character
        g1 = rep1.group
        for alpha in rep2.group.automorphisms(gens):
            if all(chi2.values[alpha[iso[g]]] == chi1.values[g] for g in range(g1.order)):
                return [alpha[iso[g]] for g in range(g1.order)]
        return None
    group = rep1.group
    chi1, chi2 = rep1.character, rep2.character
    for alpha in _cached_automorphisms(group, tuple(gens) if gens else None):
        if all(chi2.values[alpha[g]] == chi1.values[g] for g in range(group.order)):
            return alpha
    return None


_AUTO_CACHE: dict = {}


def _cached_automorphisms(group: FiniteGroup, gens):
    key = (id(group), gens)
    if key not in _AUTO_CACHE:
        _AUTO_CACHE[key] = group.automorphisms(list(gens) if gens else None)
    return _AUTO_CACHE[key]


def uniformly_gassmann(rep1: Rep, rep2: Rep, limit: int = 200):
    """(verdict, failing subgroup or None): Gassmann equivalence of the
    restrictions to every subgroup."""
    if rep1.group.table != rep2.group.table:
        raise ValueError("uniform Gassmann test expects one underlying group")
    for sub in rep1.group.all_subgroups(limit):
        r1 = restrict_rep(rep1, sorted(sub))
        r2 = restrict_rep(rep2, sorted(sub))
        if not gassmann_equivalent(r1, r2):
            return False, sub
    return True, None


def compare_all(rep1: Rep, rep2: Rep, gens=None, subgroup_limit: int = 200) -> dict:
    """The full predicate matrix between two representations."""
    chi1, chi2 = rep1.character, rep2.character
    same_table = rep1.group.table == rep2.group.table
    out = {
        "dims": [rep1.dim, rep2.dim],
        "orders": [rep1.group.order, rep2.group.order],
        "range_equal": ranges_equal(chi1, chi2),
        "range_signature_equal": range_signatures_equal(chi1, chi2),
        "spectral_signature_equal": gassmann_equivalent(rep1, rep2),
        "gassmann": gassmann_equivalent(rep1, rep2),
        "strong_gassmann": strong_gassmann(rep1, rep2),
    }
    if same_table:
        out["table_equiv"] = table_equivalent(chi1, chi2)
        out["strong_table_equiv"] = strongly_table_equivalent(chi1, chi2)
        t = galois_conjugate_reps(rep1, rep2)
        out["galois"] = t is not None
        out["galois_t"] = t
        if rep1.group.order <= 128:
            alpha = similar_reps(rep1, rep2, gens)
            out["similar"] = alpha is not None
        if rep1.group.order <= subgroup_limit:
            ok, witness = uniformly_gassmann(rep1, rep2, subgroup_limit)
            out["uniform_gassmann"] = ok
            if witness is not None:
                out["uniform_gassmann_failing_subgroup"] = sorted(witness)
    else:
        iso_possible = rep1.group.order == rep2.group.order
        if iso_possible and rep1.group.order <= 128:
            alpha = similar_reps(rep1, rep2, gens)
            out["similar"] = alpha is not None
    return out
