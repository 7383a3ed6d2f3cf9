"""Permutation representations: named generators acting on a finite sheet set."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .perms import Perm
from .words import Word


@dataclass(frozen=True)
class PermRep:
    """Images of free-group generators in the symmetric group on ``degree`` points."""

    degree: int
    images: Mapping[str, Perm] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, p in self.images.items():
            if p.degree != self.degree:
                raise ValueError(f"image of {name!r} has degree {p.degree}, expected {self.degree}")

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(sorted(self.images))

    def act_word(self, word: Word) -> Perm:
        """Evaluate the induced homomorphism on a word (left letter acts first)."""
        out = Perm.identity(self.degree)
        for name, step in word.letters():
            if name not in self.images:
                raise ValueError(f"representation has no generator {name!r}")
            img = self.images[name]
            out = out * (img if step > 0 else img.inverse())
        return out

    def orbit(self, point: int) -> tuple[int, ...]:
        """Orbit of a point under the generated group, in discovery order."""
        seen = [False] * self.degree
        seen[point] = True
        order = [point]
        frontier = [point]
        while frontier:
            nxt: list[int] = []
            for x in frontier:
                for p in self.images.values():
                    for y in (p(x), p.inverse()(x)):
                        if not seen[y]:
                            seen[y] = True
                            order.append(y)
                            nxt.append(y)
            frontier = nxt
        return tuple(order)

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def restrict(self, points: Sequence[int]) -> "PermRep":
        """Restrict to an invariant subset, relabelled 0..k-1 in the given order."""
        index = {x: i for i, x in enumerate(points)}
        if len(index) != len(points):
            raise ValueError("duplicate points in restriction")
        new_images: dict[str, Perm] = {}
        for name, p in self.images.items():
            imgs = []
            for x in points:
                y = p(x)
                if y not in index:
                    raise ValueError(f"subset not invariant: {name!r} moves {x} to {y}")
                imgs.append(index[y])
            new_images[name] = Perm(tuple(imgs))
        return PermRep(len(points), new_images)
