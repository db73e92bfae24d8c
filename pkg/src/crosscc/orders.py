"""Monomial orders on exponent tuples: lex, degrevlex, and block orders.

An order is represented by an object exposing ``key(monomial)``; monomial
``a`` precedes ``b`` exactly when ``key(a) > key(b)``.  Keys are plain
tuples so comparisons stay cheap inside Buchberger loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

Monomial = Tuple[int, ...]


def _degrevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m: Monomial):
    return m


@dataclass(frozen=True)
class MonomialOrder:
    """Total, multiplicative well-order on monomials of a fixed ring size.

    kind is one of "lex", "degrevlex", "block"; a block order eliminates
    the first `elim_count` variables (lex on that block, degrevlex on the
    rest), which is the standard elimination setup.
    """

    kind: str
    nvars: int
    elim_count: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and not (0 < self.elim_count < self.nvars):
            raise ValueError("block order needs 0 < elim_count < nvars")
        # monomials repeat heavily inside Buchberger runs; cache their keys
        object.__setattr__(self, "_key_cache", {})

    @property
    def is_graded(self) -> bool:
        return self.kind == "degrevlex"

    def key(self, m: Monomial):
        cache = self._key_cache
        k = cache.get(m)
        if k is None:
            if self.kind == "degrevlex":
                k = _degrevlex_key(m)
            elif self.kind == "lex":
                k = m
            else:
                c = self.elim_count
                k = (m[:c], _degrevlex_key(m[c:]))
            cache[m] = k
        return k

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def __str__(self):
        if self.kind == "block":
            return f"block:{self.elim_count}"
        return self.kind


def lex(nvars: int) -> MonomialOrder:
    return MonomialOrder("lex", nvars)


def degrevlex(nvars: int) -> MonomialOrder:
    return MonomialOrder("degrevlex", nvars)


def block(nvars: int, elim_count: int) -> MonomialOrder:
    return MonomialOrder("block", nvars, elim_count)


def parse_order(spec: str, nvars: int) -> MonomialOrder:
    """Parse "lex", "degrevlex" or "block:k" as used by the CLI."""
    spec = spec.strip()
    if spec == "lex":
        return lex(nvars)
    if spec == "degrevlex":
        return degrevlex(nvars)
    if spec.startswith("block:"):
        return block(nvars, int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown monomial order {spec!r}")
