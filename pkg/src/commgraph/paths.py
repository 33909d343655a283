from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .matrix import Matrix, commutes
from .space import is_central


class PathError(AssertionError):
    """A constructed path failed edge-by-edge verification."""


def simplify_path(vertices: Sequence[Matrix]) -> list[Matrix]:
    """Drop repeated vertices by cutting out the loop between repeats.

    Consecutive duplicates are the common case; the result is still a walk
    along edges of the original sequence.
    """
    out: list[Matrix] = []
    for v in vertices:
        if v in out:
            del out[out.index(v) + 1:]
        else:
            out.append(v)
    return out


@dataclass
class PathWitness:
    label: str
    vertices: list
    max_length: int
    branches: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def problems(self) -> list[str]:
        out = []
        if self.length > self.max_length:
            out.append(f"length {self.length} exceeds {self.max_length}")
        for k, v in enumerate(self.vertices):
            if is_central(v):
                out.append(f"vertex {k} is central")
        for k, (u, v) in enumerate(zip(self.vertices, self.vertices[1:])):
            if u == v:
                out.append(f"vertices {k} and {k + 1} coincide")
            elif not commutes(u, v):
                out.append(f"vertices {k} and {k + 1} do not commute")
        return out

    def validate(self) -> "PathWitness":
        bad = self.problems()
        if bad:
            raise PathError(f"{self.label}: " + "; ".join(bad))
        return self
