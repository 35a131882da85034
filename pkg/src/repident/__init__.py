"""repident: exact-arithmetic identities of finite group representations.

The package builds the identity families attached to a faithful
irreducible representation (guarded character, range, level-set, spectral,
class, eigenvalue, partition and probability identities), verifies them on
concrete matrix representations over cyclotomic fields with symbolic zero
tests, and decides the equivalence relations those identities
characterize: range-signature equality, spectral-signature (Gassmann)
equivalence and its strong/uniform refinements, table equivalence, Galois
conjugacy and similarity.

Modules:

- exactnum: rationals and cyclotomic numbers with exact arithmetic
- matrices: dense exact matrices and elimination
- freeexpr: evaluable expression DAGs over a free group algebra
- grouplab: multiplication-table groups and their derived structure
- replab: representations, characters, spectra, induction, Molien series
- idfactory: deterministic identity builders
- verifier: graded verification (exhaustive / guarded / structured / sampled)
- equivalence: signatures and equivalence predicates
- catalog: named groups and representations
- cli: the `repident` command-line tool
"""

from . import (
    catalog,
    equivalence,
    exactnum,
    freeexpr,
    grouplab,
    idfactory,
    matrices,
    replab,
    verifier,
)

__all__ = [
    "catalog",
    "equivalence",
    "exactnum",
    "freeexpr",
    "grouplab",
    "idfactory",
    "matrices",
    "replab",
    "verifier",
]
