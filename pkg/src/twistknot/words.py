"""Exact free-group word algebra.

Words are stored in run-length encoded, freely reduced normal form and are
immutable, so every equality test is a normal-form comparison and values can
be shared freely between threads.  Exponents are plain Python integers and
therefore unbounded; nothing in this module can silently overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class SubstitutionError(ValueError):
    """A substitution map is missing a generator that occurs in the word."""


@dataclass(frozen=True, order=True)
class Generator:
    """A named free-group generator.  Names are compared exactly."""

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("generator name must be a nonempty string")

    def __str__(self) -> str:
        return self.name


def generators(*names: str) -> tuple[Generator, ...]:
    return tuple(Generator(n) for n in names)


def _reduce_runs(pairs: Iterable[tuple[Generator, int]]) -> tuple[tuple[Generator, int], ...]:
    """Merge adjacent runs of the same generator and drop zero exponents."""
    out: list[tuple[Generator, int]] = []
    for gen, exp in pairs:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


class Word:
    """A freely reduced word, the identity when empty."""

    __slots__ = ("runs", "_hash")

    def __init__(self, pairs: Iterable[tuple[Generator, int]] = ()) -> None:
        object.__setattr__(self, "runs", _reduce_runs(pairs))
        object.__setattr__(self, "_hash", hash(self.runs))

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Word is immutable")

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.runs == other.runs

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)

    def __bool__(self) -> bool:
        return bool(self.runs)

    @property
    def is_identity(self) -> bool:
        return not self.runs

    def __repr__(self) -> str:
        return f"Word({self.as_text()!r})"

    def as_text(self) -> str:
        """Plain-text form, e.g. ``b a b^-2 a``; ``1`` for the identity."""
        if not self.runs:
            return "1"
        parts = []
        for gen, exp in self.runs:
            parts.append(gen.name if exp == 1 else f"{gen.name}^{exp}")
        return " ".join(parts)

    # -- group operations --------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.runs + other.runs)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.runs)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Word()
        acc = base
        while n:
            if n & 1:
                result = result * acc
            n >>= 1
            if n:
                acc = acc * acc
        return result

    def conjugate(self, by: "Word") -> "Word":
        """Return ``by * self * by^-1``."""
        return by * self * by.inverse()

    def substitute(self, mapping: Mapping[Generator, "Word"]) -> "Word":
        """Image under the homomorphism sending each generator to its value."""
        pairs: list[tuple[Generator, int]] = []
        for gen, exp in self.runs:
            if gen not in mapping:
                raise SubstitutionError(f"no image given for generator {gen.name!r}")
            pairs.extend((mapping[gen] ** exp).runs)
        return Word(pairs)

    # -- structure ---------------------------------------------------------

    def letters(self) -> list[tuple[Generator, int]]:
        """Expand runs into single letters with exponent +1 or -1."""
        out: list[tuple[Generator, int]] = []
        for gen, exp in self.runs:
            step = 1 if exp > 0 else -1
            out.extend((gen, step) for _ in range(abs(exp)))
        return out

    def generator_set(self) -> set[Generator]:
        return {g for g, _ in self.runs}

    def exponent_sum(self, gen: Generator) -> int:
        return sum(e for g, e in self.runs if g == gen)

    def cyclic_reduce(self) -> tuple["Word", "Word"]:
        """Return ``(core, conjugator)`` with ``self == conjugator * core * conjugator^-1``
        and ``core`` cyclically reduced."""
        letters = self.letters()
        i, j = 0, len(letters) - 1
        while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
            i += 1
            j -= 1
        return Word(letters[i : j + 1]), Word(letters[:i])

    def to_pairs(self) -> list[list]:
        """JSON form: list of ``[name, exponent]`` pairs."""
        return [[g.name, e] for g, e in self.runs]

    @staticmethod
    def from_pairs(pairs: Sequence[Sequence]) -> "Word":
        return Word((Generator(str(name)), int(exp)) for name, exp in pairs)


def word(*pairs: tuple[str | Generator, int]) -> Word:
    """Build a word from ``(generator, exponent)`` pairs; names are accepted."""
    return Word((g if isinstance(g, Generator) else Generator(g), e) for g, e in pairs)


def reduce_word(letters: Iterable[tuple[Generator, int]]) -> Word:
    """Freely reduce a raw letter/run sequence into normal form."""
    return Word(letters)


def is_conjugate(x: Word, y: Word) -> bool:
    """Free-group conjugacy: equal cyclically reduced cores up to rotation."""
    cx, _ = x.cyclic_reduce()
    cy, _ = y.cyclic_reduce()
    lx, ly = cx.letters(), cy.letters()
    if len(lx) != len(ly):
        return False
    if not lx:
        return True
    doubled = ly + ly
    n = len(lx)
    for start in range(n):
        if doubled[start : start + n] == lx:
            return True
    return False


def is_positive_excluding(x: Word, forbidden_inverses: Iterable[Generator]) -> bool:
    """True iff no run of ``x`` carries a negative exponent on a forbidden generator."""
    banned = set(forbidden_inverses)
    return all(not (g in banned and e < 0) for g, e in x.runs)
