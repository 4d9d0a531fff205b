"""Todd-Coxeter coset enumeration over the trivial subgroup.

The strategy is relator-driven filling with first-undefined-coset selection
and no lookahead; coincidences are processed with an iterative union-find
queue.  Given the same presentation and limit the run is fully deterministic,
and the result carries a hash of the canonically renumbered coset table so
reproductions can be compared across machines.
"""

from __future__ import annotations

import hashlib
from array import array
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .presentations import Presentation, PresentationError
from .twisted_torus import KnotGroupModel
from .criterion import Slope
from .words import Word

DEFAULT_MAX_COSETS = 10**6

STRATEGY = "hlt/first-undefined/no-lookahead"


class _Limit(Exception):
    pass


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of one enumeration: ``finished`` with a group order, or
    ``exceeded`` when the coset budget ran out (a result, not a failure)."""

    outcome: str  # "finished" | "exceeded"
    order: Optional[int]
    limit: int
    cosets_defined: int
    trace_hash: str
    strategy: str = STRATEGY

    @property
    def finished(self) -> bool:
        return self.outcome == "finished"

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "order": self.order,
            "limit": self.limit,
            "cosets_defined": self.cosets_defined,
            "trace_hash": self.trace_hash,
            "strategy": self.strategy,
        }


def surgered_presentation(model: KnotGroupModel, slope: Slope, use: str = "paper") -> Presentation:
    """Knot group presentation plus the filling relator ``meridian^p longitude^q``."""
    relator = model.meridian**slope.p * model.longitude(use) ** slope.q
    return Presentation(model.presentation.generators, model.presentation.relators + (relator,))


def _relator_columns(rel: Word, column_of: dict) -> list[int]:
    out: list[int] = []
    for gen, sign in rel.letters():
        col = column_of[gen]
        out.append(col if sign > 0 else col ^ 1)
    return out


def todd_coxeter(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> EnumerationResult:
    """Enumerate cosets of the trivial subgroup in the presented group.

    ``Finished(order)`` means the table closed with ``order`` live cosets,
    i.e. the group is finite of that order.  ``Exceeded`` means more than
    ``max_cosets`` cosets would have been needed under this strategy.
    """
    if max_cosets < 1:
        raise PresentationError("max_cosets must be >= 1")
    gens = p.generators
    if not gens:
        return EnumerationResult(
            "finished", 1, max_cosets, 1, _hash_text("trivial-presentation")
        )
    column_of = {g: 2 * i for i, g in enumerate(gens)}
    ncols = 2 * len(gens)
    relators = [_relator_columns(r, column_of) for r in p.relators if not r.is_identity]

    # column-major tables; coset numbers are 1-based, 0 means undefined
    table = [array("i", [0, 0]) for _ in range(ncols)]
    parent = array("i", [0, 1])
    state = {"defined": 1, "live": 1}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def define(alpha: int, col: int) -> int:
        if state["defined"] >= max_cosets:
            raise _Limit
        state["defined"] += 1
        state["live"] += 1
        beta = state["defined"]
        for column in table:
            column.append(0)
        parent.append(beta)
        table[col][alpha] = beta
        table[col ^ 1][beta] = alpha
        return beta

    merge_queue: deque[int] = deque()

    def merge(x: int, y: int) -> None:
        x, y = find(x), find(y)
        if x == y:
            return
        if x > y:
            x, y = y, x
        parent[y] = x
        state["live"] -= 1
        merge_queue.append(y)

    def coincidence(x: int, y: int) -> None:
        merge(x, y)
        while merge_queue:
            dead = merge_queue.popleft()
            for col in range(ncols):
                target = table[col][dead]
                if not target:
                    continue
                table[col][dead] = 0
                if table[col ^ 1][target] == dead:
                    table[col ^ 1][target] = 0
                mu = find(dead)
                nu = find(target)
                existing = table[col][mu]
                if existing:
                    merge(nu, existing)
                else:
                    mirrored = table[col ^ 1][nu]
                    if mirrored:
                        merge(mu, mirrored)
                    else:
                        table[col][mu] = nu
                        table[col ^ 1][nu] = mu

    def scan_and_fill(alpha: int, rel: list[int]) -> None:
        i, j = 0, len(rel) - 1
        fwd = bwd = alpha
        while True:
            while i <= j:
                nxt = table[rel[i]][fwd]
                if not nxt:
                    break
                if parent[nxt] != nxt:
                    nxt = find(nxt)
                    table[rel[i]][fwd] = nxt
                fwd = nxt
                i += 1
            if i > j:
                if fwd != bwd:
                    coincidence(fwd, bwd)
                return
            while j >= i:
                nxt = table[rel[j] ^ 1][bwd]
                if not nxt:
                    break
                if parent[nxt] != nxt:
                    nxt = find(nxt)
                    table[rel[j] ^ 1][bwd] = nxt
                bwd = nxt
                j -= 1
            if j < i:
                coincidence(fwd, bwd)
                return
            if j == i:
                table[rel[i]][fwd] = bwd
                table[rel[i] ^ 1][bwd] = fwd
                return
            fwd = define(fwd, rel[i])
            i += 1

    exceeded = False
    try:
        alpha = 1
        while alpha <= state["defined"]:
            if parent[alpha] == alpha:
                for rel in relators:
                    scan_and_fill(alpha, rel)
                    if parent[alpha] != alpha:
                        break
                if parent[alpha] == alpha:
                    for col in range(ncols):
                        if not table[col][alpha]:
                            define(alpha, col)
            alpha += 1
    except _Limit:
        exceeded = True

    defined = state["defined"]
    if exceeded:
        digest = _hash_text(f"exceeded:{max_cosets}:{defined}")
        return EnumerationResult("exceeded", None, max_cosets, defined, digest)
    order = state["live"]
    digest = _hash_table(table, parent, find, ncols, defined)
    return EnumerationResult("finished", order, max_cosets, defined, digest)


def _hash_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _hash_table(table, parent, find, ncols: int, defined: int) -> str:
    """Hash the closed table after canonical breadth-first renumbering."""
    start = find(1)
    number = {start: 1}
    order_list = [start]
    head = 0
    while head < len(order_list):
        coset = order_list[head]
        head += 1
        for col in range(ncols):
            target = table[col][coset]
            if target:
                target = find(target)
                if target not in number:
                    number[target] = len(order_list) + 1
                    order_list.append(target)
    hasher = hashlib.sha256()
    hasher.update(STRATEGY.encode())
    for coset in order_list:
        row = [number.get(find(table[col][coset]), 0) if table[col][coset] else 0 for col in range(ncols)]
        hasher.update(bytes(str(row), "ascii"))
    return hasher.hexdigest()[:16]
