"""Finite presentations: Tietze moves, integral homology, Alexander polynomials.

Homology is computed from the Smith normal form of the abelianized relator
matrix over exact integers.  Pivoting order is fixed (smallest nonzero
absolute value, ties broken row-major) so outputs are identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .words import Generator, Word, is_conjugate, word


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators; relators are stored freely reduced."""

    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        declared = set(self.generators)
        if len(declared) != len(self.generators):
            raise PresentationError("duplicate generator")
        for rel in self.relators:
            undeclared = rel.generator_set() - declared
            if undeclared:
                names = ", ".join(sorted(g.name for g in undeclared))
                raise PresentationError(f"relator uses undeclared generator(s): {names}")

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise PresentationError(f"no generator named {name!r}")

    def relator_matrix(self) -> list[list[int]]:
        """Exponent-sum matrix, one row per relator, one column per generator."""
        return [[rel.exponent_sum(g) for g in self.generators] for rel in self.relators]

    def to_json(self) -> dict:
        return {
            "generators": [g.name for g in self.generators],
            "relators": [rel.to_pairs() for rel in self.relators],
        }

    @staticmethod
    def from_json(data: Mapping) -> "Presentation":
        gens = tuple(Generator(str(n)) for n in data["generators"])
        rels = tuple(Word.from_pairs(p) for p in data["relators"])
        return Presentation(gens, rels)


def add_relators(p: Presentation, rs: Iterable[Word]) -> Presentation:
    """Append relators, preserving order."""
    return Presentation(p.generators, p.relators + tuple(rs))


def conjugate_relator(p: Presentation, index: int, by: Word) -> Presentation:
    rels = list(p.relators)
    rels[index] = rels[index].conjugate(by)
    return Presentation(p.generators, tuple(rels))


def invert_relator(p: Presentation, index: int) -> Presentation:
    rels = list(p.relators)
    rels[index] = rels[index].inverse()
    return Presentation(p.generators, tuple(rels))


def tietze_eliminate(p: Presentation, gen: Generator, defining: Word) -> Presentation:
    """Remove ``gen``, rewriting every relator with ``gen := defining``.

    Exactly one relator equivalent (up to conjugacy and inversion) to
    ``gen * defining^-1`` is consumed; when several qualify the first in
    stored order is taken.
    """
    if gen not in p.generators:
        raise PresentationError(f"generator {gen.name!r} not present")
    if gen in defining.generator_set():
        raise PresentationError(f"defining word for {gen.name!r} mentions it")
    target = Word(((gen, 1),)) * defining.inverse()
    consumed = None
    for i, rel in enumerate(p.relators):
        if is_conjugate(rel, target) or is_conjugate(rel, target.inverse()):
            consumed = i
            break
    if consumed is None:
        raise PresentationError(
            f"no relator expresses {gen.name!r} as the given defining word"
        )
    mapping = {g: Word(((g, 1),)) for g in p.generators if g != gen}
    mapping[gen] = defining
    new_gens = tuple(g for g in p.generators if g != gen)
    new_rels = tuple(
        rel.substitute(mapping) for i, rel in enumerate(p.relators) if i != consumed
    )
    return Presentation(new_gens, new_rels)


# -- Smith normal form -----------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(
    matrix: Sequence[Sequence[int]], nrows: int | None = None, ncols: int | None = None
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return ``(diag, U, V)`` with ``U * matrix * V`` diagonal and U, V unimodular.

    ``diag`` lists the nonnegative invariant factors in divisibility order,
    padded with zeros up to ``min(m, n)``.  Explicit shapes are accepted so
    empty matrices keep their dimensions.
    """
    m = len(matrix) if nrows is None else nrows
    n = (len(matrix[0]) if matrix else 0) if ncols is None else ncols
    a = [list(row) for row in matrix]
    u = _identity(m)
    v = _identity(n)
    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                entry = row[j]
                if entry and (best is None or abs(entry) < best):
                    best = abs(entry)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if a[i][t]:
                        # remainder is strictly smaller; promote it to pivot
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = [a[i][i] for i in range(min(m, n))]
    # canonical sign for the quotient's free coordinates
    for i in range(t, m):
        lead = next((x for x in u[i] if x), 0)
        if lead < 0:
            u[i] = [-x for x in u[i]]
    return diag, u, v


@dataclass(frozen=True)
class HomologySummary:
    """Invariant factors (> 1, in divisibility order) and free rank of H1."""

    torsion_orders: tuple[int, ...]
    free_rank: int

    @property
    def torsion_order_product(self) -> int:
        out = 1
        for d in self.torsion_orders:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"torsion": list(self.torsion_orders), "rank": self.free_rank}


def _abelianization_snf(p: Presentation):
    """SNF data of the transposed relator matrix (columns index relators)."""
    ngen = len(p.generators)
    nrel = len(p.relators)
    matrix = p.relator_matrix()
    transposed = [[matrix[r][g] for r in range(nrel)] for g in range(ngen)]
    diag, u, _ = smith_normal_form(transposed, nrows=ngen, ncols=nrel)
    rank = sum(1 for d in diag if d)
    return diag, u, rank


def homology(p: Presentation) -> HomologySummary:
    """Abelianization of the presented group as an abstract abelian group."""
    diag, _, rank = _abelianization_snf(p)
    torsion = tuple(d for d in diag if d > 1)
    return HomologySummary(torsion, len(p.generators) - rank)


def class_in_h1(p: Presentation, x: Word) -> tuple[int, ...]:
    """Image of ``x`` in H1, as coordinates in the Smith normal form basis.

    Torsion coordinates (reduced into ``[0, d)``) come first, matching
    ``HomologySummary.torsion_orders``; free coordinates follow.  A preferred
    longitude of a knot in the 3-sphere must map to all zeros.
    """
    undeclared = x.generator_set() - set(p.generators)
    if undeclared:
        names = ", ".join(sorted(g.name for g in undeclared))
        raise PresentationError(f"word uses undeclared generator(s): {names}")
    diag, u, rank = _abelianization_snf(p)
    ngen = len(p.generators)
    exps = [x.exponent_sum(g) for g in p.generators]
    image = [sum(u[i][j] * exps[j] for j in range(ngen)) for i in range(ngen)]
    torsion_coords = [
        image[i] % diag[i] for i in range(rank) if diag[i] > 1
    ]
    free_coords = image[rank:]
    return tuple(torsion_coords + free_coords)


# -- Laurent polynomials and the Alexander polynomial -----------------------


class LaurentPolynomial:
    """Integer Laurent polynomial in one variable ``t``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> None:
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for exp, c in items:
            if c:
                acc[exp] = acc.get(exp, 0) + c
                if not acc[exp]:
                    del acc[exp]
        object.__setattr__(self, "coeffs", dict(sorted(acc.items())))

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("LaurentPolynomial is immutable")

    @staticmethod
    def t_power(exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return LaurentPolynomial({exp: coeff})

    @staticmethod
    def one() -> "LaurentPolynomial":
        return LaurentPolynomial({0: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        merged = dict(self.coeffs)
        for e, c in other.coeffs.items():
            merged[e] = merged.get(e, 0) + c
        return LaurentPolynomial(merged)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        merged = dict(self.coeffs)
        for e, c in other.coeffs.items():
            merged[e] = merged.get(e, 0) - c
        return LaurentPolynomial(merged)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        acc: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    def divexact(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises ``ValueError`` on a nonzero remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial()
        shift_n = min(self.coeffs)
        shift_d = min(other.coeffs)
        num = {e - shift_n: c for e, c in self.coeffs.items()}
        den = {e - shift_d: c for e, c in other.coeffs.items()}
        deg_d = max(den)
        lead_d = den[deg_d]
        quo: dict[int, int] = {}
        rem = dict(num)
        while rem and max(rem) >= deg_d:
            deg_r = max(rem)
            lead_r = rem[deg_r]
            if lead_r % lead_d:
                raise ValueError("inexact Laurent division")
            q = lead_r // lead_d
            quo[deg_r - deg_d] = q
            for e, c in den.items():
                k = e + deg_r - deg_d
                rem[k] = rem.get(k, 0) - q * c
                if not rem[k]:
                    del rem[k]
        if rem:
            raise ValueError("inexact Laurent division")
        return LaurentPolynomial({e + shift_n - shift_d: c for e, c in quo.items()})

    def normalized(self) -> "LaurentPolynomial":
        """Fix the unit: lowest exponent 0 and positive leading coefficient."""
        if self.is_zero():
            return self
        low = min(self.coeffs)
        shifted = {e - low: c for e, c in self.coeffs.items()}
        if shifted[max(shifted)] < 0:
            shifted = {e: -c for e, c in shifted.items()}
        return LaurentPolynomial(shifted)

    def as_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.coeffs.items():
            if e == 0:
                term = str(abs(c))
            else:
                var = "t" if e == 1 else f"t^{e}"
                term = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"coefficients": [[e, c] for e, c in self.coeffs.items()], "text": self.as_text()}

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.as_text()!r})"


def _fox_image(rel: Word, gen: Generator, phi: dict[Generator, int]) -> LaurentPolynomial:
    """Abelianized Fox derivative of ``rel`` with respect to ``gen``."""
    acc: dict[int, int] = {}
    height = 0
    for g, s in rel.letters():
        if g == gen:
            if s > 0:
                acc[height] = acc.get(height, 0) + 1
            else:
                acc[height - phi[g]] = acc.get(height - phi[g], 0) - 1
        height += s * phi[g]
    return LaurentPolynomial(acc)


def alexander_polynomial(p: Presentation) -> LaurentPolynomial:
    """Alexander polynomial of a deficiency-one knot group presentation.

    Accepts one generator with no relators, or two generators with one
    relator and H1 infinite cyclic; normalized up to the unit ``+-t^k``
    (lowest exponent 0, positive leading coefficient).
    """
    if len(p.generators) == 1 and not p.relators:
        return LaurentPolynomial.one()
    if len(p.generators) != 2 or len(p.relators) != 1:
        raise PresentationError(
            "Alexander polynomial requires a 2-generator, 1-relator presentation"
        )
    summary = homology(p)
    if summary.free_rank != 1 or summary.torsion_orders:
        raise PresentationError("presentation does not have H1 infinite cyclic")
    g0, g1 = p.generators
    phi = {
        g0: class_in_h1(p, word((g0, 1)))[0],
        g1: class_in_h1(p, word((g1, 1)))[0],
    }
    x, y = (g0, g1) if phi[g1] else (g1, g0)
    rel = p.relators[0]
    t_minus_1 = LaurentPolynomial({1: 1, 0: -1})
    denom = LaurentPolynomial({phi[y]: 1, 0: -1})
    numer = _fox_image(rel, x, phi) * t_minus_1
    return numer.divexact(denom).normalized()
