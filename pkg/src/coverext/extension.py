"""Extending a branched cover across a larger base.

The cover is a transitive permutation representation ``rho0`` of the free
group on the small base's loop alphabet.  An inclusion of bases induces a
homomorphism ``iota`` into the big base's deck group, given by a word image
per source generator plus a presentation of the target group.  The extension
is computed combinatorially:

1. stabilizer generators of the base sheet (Schreier words),
2. their images under ``iota`` generate the pushed subgroup,
3. coset enumeration over the target presentation yields the extended sheet
   count ``b1``, the extended action ``rho1``, and the sheet-to-coset fiber
   map (base sheet ``s`` goes to the coset of ``iota(transversal word of s)``).

The extension is *strong* exactly when the fiber map is injective, i.e.
``b1 == b0``; it always satisfies ``b1 <= b0`` when the fiber map is onto.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .cosets import CosetTable, Presentation, StabilizerData, schreier_generators, todd_coxeter
from .errors import CapExceeded, SurjectivityError
from .perms import Perm
from .reps import PermRep
from .words import Word


@dataclass(frozen=True)
class Inclusion:
    """Generator-wise homomorphism from the source free group to a presented group."""

    source_generators: tuple[str, ...]
    images: Mapping[str, Word]
    target: Presentation

    def __post_init__(self) -> None:
        if set(self.images) != set(self.source_generators):
            raise ValueError("inclusion must give exactly one image per source generator")
        target_gens = set(self.target.generators)
        for name, w in self.images.items():
            for g in w.generators():
                if g not in target_gens:
                    raise ValueError(f"image of {name!r} uses unknown target generator {g!r}")

    def push(self, word: Word) -> Word:
        """Image of a source word in the target generators."""
        return word.substitute(self.images)


@dataclass(frozen=True)
class ExtensionResult:
    """Outcome of extending a cover; coset 0 is the pushed stabilizer."""

    b0: int
    b1: int
    rho1: PermRep
    fiber_map: tuple[int, ...]
    strong: bool
    table: CosetTable
    stabilizer: StabilizerData
    inclusion: Inclusion
    abelianization_surjective: bool | None

    def sheet_of_path(self, word: Word) -> int:
        """Extended sheet determined by a path class (word in target generators)."""
        return self.table.act(0, word)

    def path_classes_equivalent(self, w1: Word, w2: Word) -> bool:
        """Whether two path classes label the same extended sheet."""
        return self.sheet_of_path(w1) == self.sheet_of_path(w2)


def _exponent_vector(word: Word, names: Sequence[str]) -> list[int]:
    idx = {n: i for i, n in enumerate(names)}
    v = [0] * len(names)
    for name, exp in word.syllables:
        v[idx[name]] += exp
    return v


def _spans_full_lattice(columns: Sequence[Sequence[int]], m: int) -> bool:
    """Whether integer vectors span all of Z^m (unimodular column elimination)."""
    if m == 0:
        return True
    cols = [list(c) for c in columns if any(c)]
    p = 0
    for row in range(m):
        while True:
            nz = [k for k in range(p, len(cols)) if cols[k][row] != 0]
            if not nz:
                return False
            if len(nz) == 1:
                k = nz[0]
                break
            nz.sort(key=lambda k: abs(cols[k][row]))
            a, b = nz[0], nz[1]
            q = cols[b][row] // cols[a][row]
            for r in range(m):
                cols[b][r] -= q * cols[a][r]
        cols[p], cols[k] = cols[k], cols[p]
        if abs(cols[p][row]) != 1:
            return False
        p += 1
    return True


def abelianized_surjective(inclusion: Inclusion) -> bool:
    """Necessary condition for surjectivity: onto after abelianizing both sides.

    The target abelianization is Z^m modulo the relator exponent vectors, so
    the induced map is onto iff the image exponent vectors together with the
    relator vectors span Z^m.
    """
    names = inclusion.target.generators
    cols = [_exponent_vector(inclusion.images[g], names) for g in inclusion.source_generators]
    cols += [_exponent_vector(r, names) for r in inclusion.target.relators]
    return _spans_full_lattice(cols, len(names))


def weak_extend(
    rho0: PermRep,
    inclusion: Inclusion,
    surjectivity_assumed: bool = True,
    cap: int = 1_000_000,
) -> ExtensionResult:
    """Extend the cover ``rho0`` across the inclusion of bases.

    Raises :class:`SurjectivityError` if the computed fiber map is not onto
    (the returned object's invariants would fail), or if
    ``surjectivity_assumed`` is set and the abelianized surjectivity test
    refutes the assumption.  With ``surjectivity_assumed=False`` the test
    result is recorded on the result instead of raising, and maximality of
    the construction is not guaranteed.
    """
    if sorted(inclusion.source_generators) != sorted(rho0.images):
        raise ValueError("inclusion source alphabet must match the representation's generators")
    if not rho0.is_transitive():
        raise ValueError("cover representation must be transitive")

    ab_onto = abelianized_surjective(inclusion)
    if surjectivity_assumed and not ab_onto:
        raise SurjectivityError(
            "inclusion-induced map is not surjective (fails already on abelianizations); "
            "rerun with surjectivity_assumed=False to record this instead"
        )

    stab = schreier_generators(rho0, gen_order=inclusion.source_generators)
    pushed = [inclusion.push(w) for w in stab.generators]
    table = todd_coxeter(inclusion.target, pushed, cap=cap)
    b0, b1 = rho0.degree, table.index
    rho1 = table.to_rep()

    fiber_map = tuple(table.act(0, inclusion.push(t)) for t in stab.transversal)
    missed = sorted(set(range(b1)) - set(fiber_map))
    if missed:
        raise SurjectivityError(
            f"fiber map misses extended sheets {missed}: the inclusion-induced map "
            f"cannot be surjective"
        )
    for name, p in rho0.images.items():
        q = rho1.act_word(inclusion.images[name])
        for s in range(b0):
            if fiber_map[p(s)] != q(fiber_map[s]):
                raise RuntimeError("internal error: fiber map is not equivariant")

    strong = b1 == b0
    injective = len(set(fiber_map)) == b0
    if strong != injective:
        raise RuntimeError("internal error: injectivity must coincide with b1 == b0")
    return ExtensionResult(
        b0=b0,
        b1=b1,
        rho1=rho1,
        fiber_map=fiber_map,
        strong=strong,
        table=table,
        stabilizer=stab,
        inclusion=inclusion,
        abelianization_surjective=ab_onto,
    )


@dataclass(frozen=True)
class MaximalityVerdict:
    """How a candidate action compares against the constructed extension."""

    is_extension: bool
    degree_ok: bool
    equivalent: bool
    quotient_map: tuple[int, ...] | None
    conjugator: Perm | None


def maximality_check(
    result: ExtensionResult,
    candidate: PermRep,
    cap_degree: int = 8,
) -> MaximalityVerdict:
    """Check whether a candidate extended action is dominated by the constructed one.

    A candidate is an extension iff some equivariant map from the constructed
    coset action onto the candidate's sheets exists; such a map is determined
    by the image of coset 0, so the search is over ``candidate.degree``
    starting points.  Equivalence means the map is a bijection (then its
    permutation is returned as the conjugating relabelling).
    """
    if candidate.degree > cap_degree:
        raise CapExceeded(
            f"maximality check capped at degree {cap_degree}, candidate has degree {candidate.degree}"
        )
    pres = result.inclusion.target
    if set(candidate.images) != set(pres.generators):
        raise ValueError("candidate must act through the target group's generators")
    for r in pres.relators:
        if not candidate.act_word(r).is_identity():
            return MaximalityVerdict(False, candidate.degree <= result.b1, False, None, None)

    table = result.table
    quotient: tuple[int, ...] | None = None
    for t0 in range(candidate.degree):
        f: list[int | None] = [None] * table.index
        f[0] = t0
        ok = True
        frontier = [0]
        while frontier and ok:
            nxt: list[int] = []
            for c in frontier:
                for name in pres.generators:
                    c2 = table.coset_action(name)(c)
                    t2 = candidate.images[name](f[c])  # type: ignore[arg-type]
                    if f[c2] is None:
                        f[c2] = t2
                        nxt.append(c2)
                    elif f[c2] != t2:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if ok and None not in f and set(f) == set(range(candidate.degree)):  # onto
            quotient = tuple(f)  # type: ignore[arg-type]
            break

    is_ext = quotient is not None
    degree_ok = candidate.degree <= result.b1
    equivalent = is_ext and candidate.degree == result.b1
    conj = Perm(quotient) if equivalent and quotient is not None else None
    return MaximalityVerdict(is_ext, degree_ok, equivalent, quotient, conj)


def lift_is_closed(rep: PermRep, word: Word, sheet: int = 0) -> bool:
    """Whether the lift of a loop starting on ``sheet`` returns to it."""
    return rep.act_word(word)(sheet) == sheet


def two_sheet_unique(k: int) -> bool:
    """Uniqueness of the 2-sheet cover with every loop acting nontrivially.

    Enumerates all assignments of the k loop generators into the 2-point
    symmetric group and keeps the transitive ones where no generator acts
    trivially; returns True when exactly one assignment survives.
    """
    if k < 1:
        raise ValueError("need at least one generator")
    e = Perm.identity(2)
    t = Perm.transposition(2, 0, 1)
    names = [f"g{i}" for i in range(k)]
    survivors = 0
    for assignment in itertools.product((e, t), repeat=k):
        if any(p.is_identity() for p in assignment):
            continue
        rep = PermRep(2, dict(zip(names, assignment)))
        if rep.is_transitive():
            survivors += 1
    return survivors == 1
