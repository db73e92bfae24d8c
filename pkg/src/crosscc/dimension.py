"""Krull dimension of zero sets via leading-term (monomial) ideals.

For a monomial ideal M in k[x_1..x_n], dim Z(M) equals the largest size of
a variable subset S such that no generator of M lies entirely in S; this is
the classical combinatorial characterization, computed here by subset
search with support-based pruning.  For a general ideal the dimension of
its zero set equals that of the leading-term ideal of any Groebner basis
under a graded order, which is what ideal_dimension wires together.
"""

from __future__ import annotations

from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .certify import CERTIFIED, FALSIFIED, Certificate
from .groebner import GBOptions, GroebnerBasis, buchberger, leading_terms
from .mpoly import Monomial, MPoly
from .orders import MonomialOrder, degrevlex


def monomial_supports(mons: Sequence[Monomial]) -> List[frozenset]:
    return [frozenset(i for i, e in enumerate(m) if e) for m in mons]


def monomial_ideal_dimension(mons: Sequence[Monomial], nvars: int) -> int:
    """dim Z(M) for the monomial ideal generated by `mons`.

    Returns -1 when some generator is the constant monomial 1 (the zero
    set is empty).  The zero ideal (no generators) has dimension nvars.
    """
    supports = monomial_supports(mons)
    if any(not s for s in supports):
        return -1
    if not supports:
        return nvars
    # largest S subset of variables with every support meeting complement(S)
    allvars = frozenset(range(nvars))
    for size in range(nvars, -1, -1):
        for keep in combinations(sorted(allvars), size):
            ks = frozenset(keep)
            if all(not s <= ks for s in supports):
                return size
    return -1  # unreachable: size 0 always works when no support is empty


def monomial_ideal_dimension_bruteforce(mons: Sequence[Monomial], nvars: int) -> int:
    """Reference implementation by exhaustive subset enumeration, used as
    an independent oracle in tests."""
    supports = monomial_supports(mons)
    if any(not s for s in supports):
        return -1
    best = -1
    for mask in range(1 << nvars):
        ks = frozenset(i for i in range(nvars) if mask >> i & 1)
        if all(not s <= ks for s in supports):
            best = max(best, len(ks))
    return best


def ideal_dimension(
    gens: Sequence[MPoly],
    order: Optional[MonomialOrder] = None,
    opts: Optional[GBOptions] = None,
) -> Tuple[int, GroebnerBasis]:
    """Dimension of the zero set of <gens>, with the basis used.

    Requires a graded order (degrevlex); leading-term ideals under
    non-graded orders do not certify dimension this way.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    n = len(gens[0].ring)
    order = order or degrevlex(n)
    if not order.is_graded:
        raise ValueError("dimension extraction requires a graded order")
    gb = buchberger(gens, order, opts)
    if not gb.polys:
        return n, gb
    lts = leading_terms(gb)
    return monomial_ideal_dimension(lts, n), gb


def plt_bound(
    partial_lts: Sequence[Monomial],
    nvars: int,
    claimed_k: int,
    provenance: Sequence,
) -> Certificate:
    """Upper bound on the dimension of a variety from a *partial* set of
    verified leading terms: dim Z(I) <= dim Z(<partial_lts>).

    `provenance` must identify the Groebner runs (one record per source
    run) that produced these monomials as genuine leading terms of ideal
    members; without it, the bound is refused rather than certified.
    """
    if not provenance:
        raise ValueError("refusing to certify: no provenance for the leading terms")
    k = monomial_ideal_dimension(partial_lts, nvars)
    status = CERTIFIED if k <= claimed_k else FALSIFIED
    return Certificate(
        claim=f"dim <= {claimed_k} via partial leading terms",
        status=status,
        detail={
            "monomial_count": len(partial_lts),
            "bound": k,
            "claimed": claimed_k,
            "provenance_runs": len(provenance),
        },
    )
